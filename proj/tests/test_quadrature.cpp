#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "fareymmd/quadrature.hpp"

using namespace fareymmd;

TEST_CASE("constants and polynomials are exact") {
  CHECK(std::abs(integrate([](double) { return 1.0; }, 0.0, 1.0) - 1.0) <= 2e-15);
  CHECK(std::abs(integrate([](double x) { return x * x; }, 0.0, 1.0) - 1.0 / 3.0) <=
        1e-15);
  // Degree 29 is the 15-point rule's exactness limit; no subdivision needed.
  double r = integrate([](double x) { return std::pow(x, 29.0); }, 0.0, 1.0);
  CHECK(std::abs(r - 1.0 / 30.0) <= 1e-15);
  r = integrate([](double x) { return 3.0 * std::pow(x, 20.0) - 2.0 * std::pow(x, 7.0); },
                0.0, 1.0);
  CHECK(std::abs(r - (3.0 / 21.0 - 2.0 / 8.0)) <= 1e-15);
}

TEST_CASE("smooth transcendental integrand") {
  const double r = integrate([](double x) { return std::exp(-x); }, 0.0, 1.0);
  CHECK(std::abs(r - (1.0 - std::exp(-1.0))) <= 1e-12);
}

TEST_CASE("general interval") {
  const double r = integrate([](double x) { return std::sin(x); }, 0.5, 2.5);
  CHECK(std::abs(r - (std::cos(0.5) - std::cos(2.5))) <= 1e-12);
}

TEST_CASE("kinked integrand converges at 1e-12") {
  const double r = integrate([](double x) { return std::exp(-std::abs(x - 0.3)); },
                             0.0, 1.0, {1e-12, 50});
  const double exact = 2.0 - std::exp(-0.3) - std::exp(-0.7);
  CHECK(std::abs(r - exact) <= 1e-12);
}

TEST_CASE("two-dimensional integrands") {
  CHECK(std::abs(integrate2d([](double, double) { return 1.0; }) - 1.0) <= 1e-13);
  const double min_kernel =
      integrate2d([](double x, double y) { return 1.0 + std::min(x, y); }, {1e-12, 50});
  CHECK(std::abs(min_kernel - 4.0 / 3.0) <= 1e-12);
  const double laplace =
      integrate2d([](double x, double y) { return std::exp(-std::abs(x - y)); },
                  {1e-12, 50});
  CHECK(std::abs(laplace - 2.0 * std::exp(-1.0)) <= 1e-12);
}

TEST_CASE("degenerate and invalid input") {
  CHECK(integrate([](double x) { return x; }, 0.7, 0.7) == 0.0);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, {-1.0, 50}),
                  std::invalid_argument);
  CHECK_THROWS_AS(integrate([](double x) { return x; }, 0.0, 1.0, {1e-12, 0}),
                  std::invalid_argument);
}

TEST_CASE("max_depth failure is loud") {
  CHECK_THROWS_AS(integrate([](double x) { return std::exp(-std::abs(x - 0.3)); }, 0.0,
                            1.0, {1e-13, 2}),
                  std::runtime_error);
}
