#include "fareymmd/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace fareymmd {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
constexpr std::uint64_t kLimbMask = kBase - 1;
}  // namespace

BigUint::BigUint(std::uint64_t v) {
  if (v != 0) {
    limbs_.push_back(static_cast<std::uint32_t>(v & kLimbMask));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }
}

BigUint BigUint::from_u128(unsigned __int128 v) {
  BigUint r;
  while (v != 0) {
    r.limbs_.push_back(static_cast<std::uint32_t>(v & kLimbMask));
    v >>= 32;
  }
  return r;
}

void BigUint::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
}

std::size_t BigUint::bit_length() const {
  if (limbs_.empty()) return 0;
  return 32 * (limbs_.size() - 1) + (32 - std::countl_zero(limbs_.back()));
}

int BigUint::compare(const BigUint& a, const BigUint& b) {
  if (a.limbs_.size() != b.limbs_.size()) {
    return a.limbs_.size() < b.limbs_.size() ? -1 : 1;
  }
  for (std::size_t i = a.limbs_.size(); i-- > 0;) {
    if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] < b.limbs_[i] ? -1 : 1;
  }
  return 0;
}

BigUint& BigUint::operator+=(const BigUint& o) {
  const std::size_t n = std::max(limbs_.size(), o.limbs_.size());
  limbs_.resize(n, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t s = carry + limbs_[i];
    if (i < o.limbs_.size()) s += o.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(s & kLimbMask);
    carry = s >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigUint& BigUint::operator-=(const BigUint& o) {
  if (compare(*this, o) < 0) {
    throw std::logic_error("BigUint: subtraction would go negative");
  }
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(limbs_[i]) - borrow -
                     (i < o.limbs_.size() ? static_cast<std::int64_t>(o.limbs_[i]) : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    limbs_[i] = static_cast<std::uint32_t>(d);
  }
  trim();
  return *this;
}

BigUint operator*(const BigUint& a, const BigUint& b) {
  BigUint r;
  if (a.is_zero() || b.is_zero()) return r;
  r.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
  for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    const std::uint64_t ai = a.limbs_[i];
    for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
      // Fits u64: (2^32-1)^2 + 2*(2^32-1) < 2^64.
      std::uint64_t cur = r.limbs_[i + j] + ai * b.limbs_[j] + carry;
      r.limbs_[i + j] = static_cast<std::uint32_t>(cur & kLimbMask);
      carry = cur >> 32;
    }
    r.limbs_[i + b.limbs_.size()] = static_cast<std::uint32_t>(carry);
  }
  r.trim();
  return r;
}

BigUint& BigUint::operator<<=(unsigned bits) {
  if (is_zero() || bits == 0) return *this;
  const unsigned limb_shift = bits / 32;
  const unsigned bit_shift = bits % 32;
  const std::size_t old_size = limbs_.size();
  limbs_.resize(old_size + limb_shift + 1, 0);
  for (std::size_t i = old_size; i-- > 0;) {
    const std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) << bit_shift;
    limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
    limbs_[i + limb_shift] = static_cast<std::uint32_t>(v & kLimbMask);
  }
  for (unsigned i = 0; i < limb_shift; ++i) limbs_[i] = 0;
  trim();
  return *this;
}

BigUint& BigUint::operator>>=(unsigned bits) {
  if (is_zero() || bits == 0) return *this;
  const unsigned limb_shift = bits / 32;
  const unsigned bit_shift = bits % 32;
  if (limb_shift >= limbs_.size()) {
    limbs_.clear();
    return *this;
  }
  limbs_.erase(limbs_.begin(), limbs_.begin() + limb_shift);
  if (bit_shift != 0) {
    for (std::size_t i = 0; i < limbs_.size(); ++i) {
      std::uint64_t v = static_cast<std::uint64_t>(limbs_[i]) >> bit_shift;
      if (i + 1 < limbs_.size()) {
        v |= static_cast<std::uint64_t>(limbs_[i + 1]) << (32 - bit_shift);
      }
      limbs_[i] = static_cast<std::uint32_t>(v & kLimbMask);
    }
  }
  trim();
  return *this;
}

std::uint64_t BigUint::div_u64_inplace(std::uint64_t d) {
  if (d == 0) throw std::domain_error("BigUint: division by zero");
  unsigned __int128 rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    const unsigned __int128 cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur / d);
    rem = cur % d;
  }
  trim();
  return static_cast<std::uint64_t>(rem);
}

std::uint64_t BigUint::mod_u64(std::uint64_t d) const {
  if (d == 0) throw std::domain_error("BigUint: modulo by zero");
  unsigned __int128 rem = 0;
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    rem = ((rem << 32) | limbs_[i]) % d;
  }
  return static_cast<std::uint64_t>(rem);
}

void BigUint::divmod(const BigUint& a, const BigUint& d, BigUint& q, BigUint& r) {
  if (d.is_zero()) throw std::domain_error("BigUint: division by zero");
  if (compare(a, d) < 0) {
    r = a;
    q = BigUint();
    return;
  }
  if (d.limbs_.size() == 1) {
    q = a;
    r = BigUint(q.div_u64_inplace(d.limbs_[0]));
    return;
  }

  // Knuth algorithm D. Normalize so the top divisor limb has its high bit set.
  const unsigned shift = std::countl_zero(d.limbs_.back());
  BigUint dn = d;
  dn <<= shift;
  BigUint an = a;
  an <<= shift;
  const std::size_t n = dn.limbs_.size();
  const std::size_t m = an.limbs_.size() - n;

  std::vector<std::uint32_t> u = an.limbs_;
  u.push_back(0);
  const std::vector<std::uint32_t>& v = dn.limbs_;
  const std::uint64_t vn1 = v[n - 1];
  const std::uint64_t vn2 = v[n - 2];

  q.limbs_.assign(m + 1, 0);
  for (std::size_t j = m + 1; j-- > 0;) {
    const std::uint64_t num =
        (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
    std::uint64_t qhat = num / vn1;
    std::uint64_t rhat = num % vn1;
    if (qhat > kLimbMask) {
      qhat = kLimbMask;
      rhat = num - qhat * vn1;
    }
    while (rhat <= kLimbMask &&
           qhat * vn2 > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += vn1;
    }

    // Multiply-and-subtract qhat * v from u[j .. j+n].
    std::uint64_t carry = 0;
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      const std::int64_t t =
          static_cast<std::int64_t>(u[i + j]) -
          static_cast<std::int64_t>(p & kLimbMask) + borrow;
      u[i + j] = static_cast<std::uint32_t>(t & static_cast<std::int64_t>(kLimbMask));
      borrow = t >> 32;  // arithmetic shift: 0 or -1
    }
    const std::int64_t t = static_cast<std::int64_t>(u[j + n]) -
                           static_cast<std::int64_t>(carry) + borrow;
    u[j + n] = static_cast<std::uint32_t>(t);
    if (t < 0) {
      // qhat was one too large; add the divisor back.
      --qhat;
      std::uint64_t c2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
        u[i + j] = static_cast<std::uint32_t>(s & kLimbMask);
        c2 = s >> 32;
      }
      u[j + n] = static_cast<std::uint32_t>(u[j + n] + c2);
    }
    q.limbs_[j] = static_cast<std::uint32_t>(qhat);
  }
  q.trim();

  r.limbs_.assign(u.begin(), u.begin() + n);
  r.trim();
  r >>= shift;
}

BigUint BigUint::divexact(const BigUint& a, const BigUint& d) {
  BigUint q, r;
  divmod(a, d, q, r);
  if (!r.is_zero()) throw std::logic_error("BigUint: division expected to be exact");
  return q;
}

unsigned BigUint::trailing_zero_bits() const {
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    if (limbs_[i] != 0) {
      return static_cast<unsigned>(32 * i) + std::countr_zero(limbs_[i]);
    }
  }
  return 0;
}

BigUint BigUint::gcd(BigUint a, BigUint b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const unsigned za = a.trailing_zero_bits();
  const unsigned zb = b.trailing_zero_bits();
  const unsigned common = std::min(za, zb);
  a >>= za;
  b >>= zb;
  // Both odd from here on.
  while (true) {
    if (compare(a, b) > 0) std::swap(a, b);
    b -= a;
    if (b.is_zero()) break;
    b >>= b.trailing_zero_bits();
  }
  a <<= common;
  return a;
}

double BigUint::to_double_scaled(long& exp2) const {
  if (is_zero()) throw std::logic_error("BigUint: to_double_scaled on zero");
  const std::size_t bits = bit_length();
  if (bits <= 64) {
    std::uint64_t v = 0;
    for (std::size_t i = limbs_.size(); i-- > 0;) v = (v << 32) | limbs_[i];
    exp2 = 0;
    return static_cast<double>(v);
  }
  // Top 64 bits of the number.
  BigUint t = *this;
  t >>= static_cast<unsigned>(bits - 64);
  std::uint64_t v = 0;
  for (std::size_t i = t.limbs_.size(); i-- > 0;) v = (v << 32) | t.limbs_[i];
  exp2 = static_cast<long>(bits - 64);
  return static_cast<double>(v);
}

double BigUint::to_double() const {
  if (is_zero()) return 0.0;
  long e = 0;
  const double m = to_double_scaled(e);
  return std::ldexp(m, static_cast<int>(e));
}

std::string BigUint::str() const {
  if (is_zero()) return "0";
  BigUint t = *this;
  std::vector<std::uint32_t> groups;
  while (!t.is_zero()) {
    groups.push_back(static_cast<std::uint32_t>(t.div_u64_inplace(1000000000ull)));
  }
  std::string out = std::to_string(groups.back());
  char buf[16];
  for (std::size_t i = groups.size() - 1; i-- > 0;) {
    std::snprintf(buf, sizeof(buf), "%09u", groups[i]);
    out += buf;
  }
  return out;
}

BigRational BigRational::make(BigUint n, BigUint d) {
  if (d.is_zero()) throw std::domain_error("BigRational: zero denominator");
  BigRational r;
  if (n.is_zero()) {
    r.num_ = BigUint();
    r.den_ = BigUint(1);
    return r;
  }
  const BigUint g = BigUint::gcd(n, d);
  r.num_ = BigUint::divexact(n, g);
  r.den_ = BigUint::divexact(d, g);
  return r;
}

int BigRational::compare(const BigRational& a, const BigRational& b) {
  return BigUint::compare(a.num_ * b.den_, b.num_ * a.den_);
}

BigRational operator+(const BigRational& a, const BigRational& b) {
  return BigRational::make(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

BigRational operator*(const BigRational& a, const BigRational& b) {
  return BigRational::make(a.num_ * b.num_, a.den_ * b.den_);
}

BigRational BigRational::abs_diff(const BigRational& a, const BigRational& b) {
  BigUint lhs = a.num_ * b.den_;
  BigUint rhs = b.num_ * a.den_;
  if (BigUint::compare(lhs, rhs) < 0) std::swap(lhs, rhs);
  return make(lhs - rhs, a.den_ * b.den_);
}

double BigRational::to_double() const {
  if (num_.is_zero()) return 0.0;
  long en = 0;
  long ed = 0;
  const double mn = num_.to_double_scaled(en);
  const double md = den_.to_double_scaled(ed);
  return std::ldexp(mn / md, static_cast<int>(en - ed));
}

}  // namespace fareymmd
