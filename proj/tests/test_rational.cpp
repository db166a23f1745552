#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "fareymmd/bigint.hpp"
#include "fareymmd/rational.hpp"

using namespace fareymmd;

TEST_CASE("rational reduction and order") {
  const Rational r(6, 4);
  CHECK(r.num == 3);
  CHECK(r.den == 2);
  CHECK(Rational(0, 7) == Rational(0, 1));
  CHECK(Rational(1, 3) < Rational(2, 5));
  CHECK(Rational(2, 5) < Rational(1, 2));
  CHECK(Rational(1, 2) == Rational(2, 4));
  CHECK(Rational(1, 3).str() == "1/3");
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(-1, 2), std::invalid_argument);
}

TEST_CASE("biguint small arithmetic matches u128") {
  std::mt19937_64 rng(12345);
  for (int it = 0; it < 2000; ++it) {
    const std::uint64_t a = rng() >> (rng() % 32);
    const std::uint64_t b = rng() >> (rng() % 32);
    const unsigned __int128 sum = static_cast<unsigned __int128>(a) + b;
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    CHECK(BigUint(a) + BigUint(b) == BigUint::from_u128(sum));
    CHECK(BigUint(a) * BigUint(b) == BigUint::from_u128(prod));
    const std::uint64_t lo = std::min(a, b), hi = std::max(a, b);
    CHECK(BigUint(hi) - BigUint(lo) == BigUint(hi - lo));
    CHECK(BigUint::compare(BigUint(a), BigUint(b)) == (a < b ? -1 : (a == b ? 0 : 1)));
  }
}

TEST_CASE("biguint divmod self-consistency on wide operands") {
  std::mt19937_64 rng(777);
  for (int it = 0; it < 500; ++it) {
    // Build operands of up to ~320 bits.
    BigUint a(rng());
    const int extra = static_cast<int>(rng() % 5);
    for (int i = 0; i < extra; ++i) a = a * BigUint(rng()) + BigUint(rng());
    BigUint d(rng() | 1);
    if (rng() % 3 == 0) d = d * BigUint(rng() | 1);
    if (rng() % 7 == 0) d = BigUint(1 + (rng() % 1000));

    BigUint q, r;
    BigUint::divmod(a, d, q, r);
    CHECK(q * d + r == a);
    CHECK(BigUint::compare(r, d) < 0);
  }
}

TEST_CASE("biguint gcd properties") {
  std::mt19937_64 rng(4242);
  for (int it = 0; it < 300; ++it) {
    BigUint a(rng());
    BigUint b(rng());
    if (rng() % 2) a = a * BigUint(rng());
    if (rng() % 2) b = b * BigUint(rng());
    const BigUint g = BigUint::gcd(a, b);
    if (a.is_zero() && b.is_zero()) continue;
    CHECK(!g.is_zero());
    BigUint q, r;
    BigUint::divmod(a, g, q, r);
    CHECK(r.is_zero());
    BigUint::divmod(b, g, q, r);
    CHECK(r.is_zero());
    // The cofactors are coprime.
    const BigUint ca = BigUint::divexact(a, g);
    const BigUint cb = BigUint::divexact(b, g);
    if (!ca.is_zero() || !cb.is_zero()) {
      CHECK(BigUint::gcd(ca, cb) == BigUint(1));
    }
  }
  CHECK(BigUint::gcd(BigUint(0), BigUint(12)) == BigUint(12));
  CHECK(BigUint::gcd(BigUint(18), BigUint(24)) == BigUint(6));
}

TEST_CASE("biguint decimal strings and doubles") {
  CHECK(BigUint(0).str() == "0");
  CHECK(BigUint(1234567890123456789ull).str() == "1234567890123456789");
  BigUint big(1);
  big <<= 128;
  CHECK(big.str() == "340282366920938463463374607431768211456");
  BigUint p10(1);
  for (int i = 0; i < 40; ++i) p10 = p10 * BigUint(10);
  CHECK(p10.str() == "1" + std::string(40, '0'));

  BigUint two100(1);
  two100 <<= 100;
  CHECK(two100.to_double() == std::ldexp(1.0, 100));
  CHECK(BigUint(99).to_double() == 99.0);
  CHECK(BigUint(0).to_double() == 0.0);
  CHECK(BigUint(1234567890123456789ull).mod_u64(97) == 1234567890123456789ull % 97);
}

TEST_CASE("bigrational arithmetic is exact") {
  const BigRational third = BigRational::from_u64(1, 3);
  const BigRational sixth = BigRational::from_u64(1, 6);
  CHECK((third + sixth) == BigRational::from_u64(1, 2));
  CHECK(BigRational::from_u64(6, 4) == BigRational::from_u64(3, 2));
  CHECK(BigRational::abs_diff(third, BigRational::from_u64(1, 4)) ==
        BigRational::from_u64(1, 12));
  CHECK(BigRational::abs_diff(BigRational::from_u64(1, 4), third) ==
        BigRational::from_u64(1, 12));
  CHECK((third * BigRational::from_u64(3, 5)) == BigRational::from_u64(1, 5));
  CHECK(BigRational::compare(third, BigRational::from_u64(2, 5)) < 0);
  CHECK(third.str() == "1/3");
  CHECK(std::abs(third.to_double() - 1.0 / 3.0) <= 1e-16);
  CHECK(BigRational::from_u64(0, 9).is_zero());
  CHECK_THROWS_AS(BigRational::make(BigUint(1), BigUint(0)), std::domain_error);

  // Large reduced ratio survives the double conversion.
  BigUint n(1);
  n <<= 200;
  const BigRational wide = BigRational::make(n + BigUint(5), (n + BigUint(5)) * BigUint(3));
  CHECK(wide == BigRational::from_u64(1, 3));
}
