#pragma once

// Exact machine-integer fractions; the point type for Farey sequences.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fareymmd {

// Reduced non-negative fraction num/den with den > 0. Farey points satisfy
// 0 <= num <= den. Construction reduces; equality is componentwise, which for
// reduced fractions coincides with value equality.
struct Rational {
  std::int64_t num{0};
  std::int64_t den{1};

  constexpr Rational() = default;

  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (d <= 0 || n < 0) {
      throw std::invalid_argument("Rational: requires num >= 0 and den > 0");
    }
    const std::int64_t g = std::gcd(num, den);
    num /= g;
    den /= g;
  }

  // Trusted constructor for values already known to be reduced (the Farey
  // recurrence emits reduced fractions by construction).
  static Rational from_reduced(std::int64_t n, std::int64_t d) {
    Rational r;
    r.num = n;
    r.den = d;
    return r;
  }

  bool operator==(const Rational& o) const = default;

  // Exact order via 128-bit cross multiplication.
  bool operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
  }
  bool operator<=(const Rational& o) const { return !(o < *this); }
  bool operator>(const Rational& o) const { return o < *this; }
  bool operator>=(const Rational& o) const { return !(*this < o); }

  // Single round-to-nearest conversion at the evaluation boundary. For Farey
  // points (num, den < 2^53) the only rounding is the final division, so the
  // relative error is at most 2^-53.
  double to_double() const {
    return static_cast<double>(num) / static_cast<double>(den);
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

}  // namespace fareymmd
