#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fareymmd/farey.hpp"
#include "support.hpp"

using namespace fareymmd;

namespace {

std::vector<Rational> pts(std::initializer_list<std::pair<int, int>> v) {
  std::vector<Rational> out;
  for (const auto& [p, q] : v) out.emplace_back(p, q);
  return out;
}

}  // namespace

TEST_CASE("the first sequences match the known listings") {
  CHECK(farey_sequence(1).points == pts({{0, 1}, {1, 1}}));
  CHECK(farey_sequence(2).points == pts({{0, 1}, {1, 2}, {1, 1}}));
  CHECK(farey_sequence(5).points ==
        pts({{0, 1}, {1, 5}, {1, 4}, {1, 3}, {2, 5}, {1, 2}, {3, 5}, {2, 3}, {3, 4}, {4, 5}, {1, 1}}));
  CHECK(farey_sequence(5).size() == 11);
}

TEST_CASE("generator matches the enumerate-reduce-sort oracle") {
  for (std::int64_t n : {1, 2, 3, 4, 5, 6, 7, 8, 12, 30, 97, 200}) {
    CAPTURE(n);
    CHECK(farey_sequence(n).points == testsupport::brute_farey(n));
  }
}

TEST_CASE("totients") {
  CHECK(totient_sieve(1) == std::vector<std::uint32_t>{1});
  CHECK(totient_sieve(5) == std::vector<std::uint32_t>({1, 1, 2, 2, 4}));
  // Direct coprime-count oracle.
  const auto phi = totient_sieve(200);
  for (std::int64_t k = 1; k <= 200; ++k) {
    std::uint32_t count = 0;
    for (std::int64_t j = 1; j <= k; ++j) {
      if (std::gcd(j, k) == 1) ++count;
    }
    CHECK(phi[static_cast<std::size_t>(k - 1)] == count);
  }
}

TEST_CASE("size formula agrees with the materialized sequence") {
  for (std::int64_t n = 1; n <= 500; ++n) {
    if (n <= 120 || n % 37 == 0 || n == 500) {
      CHECK(farey_size(n) == testsupport::brute_farey(n).size());
    }
  }
  CHECK(farey_size(1) == 2);
  CHECK(farey_size(5) == 11);
  CHECK(farey_size(250) == 19025);
  for (std::int64_t n = 1; n <= 500; ++n) {
    if (n <= 60 || n % 49 == 0) {
      CHECK(farey_size(n) == farey_sequence(n).size());
    }
  }
}

TEST_CASE("neighbor determinant holds on generated sequences") {
  for (std::int64_t n : {1, 2, 3, 5, 8, 13, 50, 121, 250}) {
    CHECK(check_neighbors(farey_sequence(n)));
  }
  FareySequence bad;
  bad.index = 1;
  bad.points = pts({{0, 1}, {0, 1}, {1, 1}});
  CHECK_FALSE(check_neighbors(bad));
}

TEST_CASE("symmetry: reversing and reflecting reproduces the sequence") {
  for (std::int64_t n : {1, 2, 3, 7, 40, 150}) {
    const auto seq = farey_sequence(n);
    const std::size_t count = seq.points.size();
    for (std::size_t i = 0; i < count; ++i) {
      const Rational& a = seq.points[i];
      const Rational& b = seq.points[count - 1 - i];
      CHECK(a.den == b.den);
      CHECK(a.num + b.num == a.den);
    }
  }
}

TEST_CASE("monotone nesting F_{n-1} within F_n") {
  for (std::int64_t n = 2; n <= 60; ++n) {
    const auto prev = farey_sequence(n - 1).points;
    const auto cur = farey_sequence(n).points;
    std::size_t j = 0;
    for (const Rational& p : prev) {
      while (j < cur.size() && cur[j] < p) ++j;
      REQUIRE(j < cur.size());
      CHECK(cur[j] == p);
    }
  }
}

TEST_CASE("points are strictly increasing with exact endpoints") {
  const auto seq = farey_sequence(97);
  CHECK(seq.points.front() == Rational(0, 1));
  CHECK(seq.points.back() == Rational(1, 1));
  for (std::size_t i = 1; i < seq.points.size(); ++i) {
    CHECK(seq.points[i - 1] < seq.points[i]);
    CHECK(seq.points[i].den <= 97);
  }
  const auto x = to_real_points(seq);
  for (Eigen::Index i = 1; i < x.size(); ++i) CHECK(x[i - 1] < x[i]);
  CHECK(x[0] == 0.0);
  CHECK(x[x.size() - 1] == 1.0);
}

TEST_CASE("index bounds are enforced") {
  CHECK_THROWS_AS(farey_sequence(0), std::invalid_argument);
  CHECK_THROWS_AS(farey_sequence(-3), std::invalid_argument);
  CHECK_THROWS_AS(farey_sequence(kMaxFareyIndex + 1), std::overflow_error);
  CHECK_THROWS_AS(farey_size(0), std::invalid_argument);
  CHECK_THROWS_AS(farey_size(kMaxFareyIndex + 1), std::overflow_error);
  CHECK_THROWS_AS(totient_sieve(0), std::invalid_argument);
}
