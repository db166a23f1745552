#pragma once

// Arbitrary-precision unsigned integers and non-negative rationals, sized for
// the exact Farey discrepancy statistics (reduced denominators reach a few
// thousand bits at n = 250). Little-endian base-2^32 limbs.

#include <cstdint>
#include <string>
#include <vector>

namespace fareymmd {

class BigUint {
 public:
  BigUint() = default;
  BigUint(std::uint64_t v);
  static BigUint from_u128(unsigned __int128 v);

  bool is_zero() const { return limbs_.empty(); }
  std::size_t bit_length() const;

  // -1, 0, +1 as a < b, a == b, a > b.
  static int compare(const BigUint& a, const BigUint& b);
  bool operator==(const BigUint& o) const { return limbs_ == o.limbs_; }

  BigUint& operator+=(const BigUint& o);
  // Requires *this >= o.
  BigUint& operator-=(const BigUint& o);
  friend BigUint operator+(BigUint a, const BigUint& b) { return a += b; }
  friend BigUint operator-(BigUint a, const BigUint& b) { return a -= b; }
  friend BigUint operator*(const BigUint& a, const BigUint& b);

  BigUint& operator<<=(unsigned bits);
  BigUint& operator>>=(unsigned bits);

  // Quotient and remainder with a non-zero divisor (Knuth algorithm D).
  static void divmod(const BigUint& a, const BigUint& d, BigUint& q, BigUint& r);
  // Division known to be exact; throws std::logic_error on a non-zero remainder.
  static BigUint divexact(const BigUint& a, const BigUint& d);
  std::uint64_t mod_u64(std::uint64_t d) const;

  static BigUint gcd(BigUint a, BigUint b);

  // Nearest double; +inf when the value exceeds the double range.
  double to_double() const;
  // Mantissa/exponent split: value ~= mantissa * 2^exp2 with full 64-bit
  // precision in the mantissa. Requires a non-zero value.
  double to_double_scaled(long& exp2) const;

  std::string str() const;

 private:
  std::vector<std::uint32_t> limbs_;

  void trim();
  // In-place division by a small divisor; returns the remainder.
  std::uint64_t div_u64_inplace(std::uint64_t d);
  unsigned trailing_zero_bits() const;
};

// num/den with den > 0, stored reduced.
class BigRational {
 public:
  BigRational() : num_(0), den_(1) {}
  // Reduces; throws std::domain_error when d is zero.
  static BigRational make(BigUint n, BigUint d);
  static BigRational from_u64(std::uint64_t n, std::uint64_t d) {
    return make(BigUint(n), BigUint(d));
  }

  const BigUint& num() const { return num_; }
  const BigUint& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  bool operator==(const BigRational& o) const {
    return num_ == o.num_ && den_ == o.den_;
  }
  static int compare(const BigRational& a, const BigRational& b);

  friend BigRational operator+(const BigRational& a, const BigRational& b);
  friend BigRational operator*(const BigRational& a, const BigRational& b);
  static BigRational abs_diff(const BigRational& a, const BigRational& b);

  // Round-to-nearest within ~2 ulp; error <= 2^-52 relative.
  double to_double() const;
  std::string str() const { return num_.str() + "/" + den_.str(); }

 private:
  BigUint num_;
  BigUint den_;
};

}  // namespace fareymmd
