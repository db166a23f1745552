#pragma once

// Brute-force oracles shared by the test suites. Everything here is built
// from first principles (enumeration, quadrature, integral representations)
// and stays independent of the closed forms it checks.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fareymmd/kernels.hpp"
#include "fareymmd/quadrature.hpp"
#include "fareymmd/rational.hpp"

namespace testsupport {

// All reduced fractions p/q with q <= n, enumerated and sorted.
inline std::vector<fareymmd::Rational> brute_farey(std::int64_t n) {
  std::vector<fareymmd::Rational> pts;
  for (std::int64_t q = 1; q <= n; ++q) {
    for (std::int64_t p = 0; p <= q; ++p) {
      if (std::gcd(p, q) == 1) pts.emplace_back(p, q);
    }
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

// Modified Bessel function of the second kind through its integral
// representation K_nu(z) = int_0^inf e^{-z cosh t} cosh(nu t) dt. The
// integrand falls off like e^{-z cosh t}, so truncation at acosh(200/z)
// leaves a tail far below 1e-15. K_nu blows up like (2/z)^nu at small z, so
// the caller passes the absolute tolerance that matches its own prefactor.
inline double bessel_k_integral(double nu, double z, double abs_tol) {
  const double t_max = std::acosh(std::max(200.0 / z, 2.0));
  return fareymmd::integrate(
      [&](double t) { return std::exp(-z * std::cosh(t)) * std::cosh(nu * t); },
      0.0, t_max, {abs_tol, 50});
}

// Matern kernel value straight from its definition: for d = |x - y| > 0,
//   K = 2^{1-nu}/Gamma(nu) * z^nu * K_nu(z),  z = sqrt(2 nu) d / lambda.
inline double matern_reference(double nu, double lambda, double d) {
  const double z = std::sqrt(2.0 * nu) * d / lambda;
  const double prefactor = std::pow(2.0, 1.0 - nu) / std::tgamma(nu);
  const double scale = prefactor * std::pow(z, nu);
  const double tol = std::clamp(1e-11 / scale, 1e-13, 1.0);
  return scale * bessel_k_integral(nu, z, tol);
}

// Quadrature value of the mean embedding, split at y so the rule never
// straddles the |x - y| kink.
inline double quad_mean_embedding(const fareymmd::KernelEvaluator& k, double y,
                                  double abs_tol = 1e-12) {
  const fareymmd::QuadratureConfig cfg{abs_tol / 2.0, 50};
  const auto f = [&](double x) { return k.eval(x, y); };
  return fareymmd::integrate(f, 0.0, y, cfg) + fareymmd::integrate(f, y, 1.0, cfg);
}

inline double quad_double_integral(const fareymmd::KernelEvaluator& k,
                                   double abs_tol = 1e-12) {
  return fareymmd::integrate2d([&](double x, double y) { return k.eval(x, y); },
                               {abs_tol, 50});
}

// From-scratch three-term MMD^2 with both integrals done by quadrature and a
// plain double-precision Gram loop. Intended for small point sets.
inline double mmd2_bruteforce(const fareymmd::KernelEvaluator& k,
                              const std::vector<double>& pts) {
  const double di = quad_double_integral(k, 1e-12);
  const std::size_t n = pts.size();
  double embed = 0.0;
  for (double x : pts) embed += quad_mean_embedding(k, x, 1e-12);
  double gram = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) gram += k.eval(pts[i], pts[j]);
  }
  const double nn = static_cast<double>(n);
  return di - 2.0 / nn * embed + gram / (nn * nn);
}

}  // namespace testsupport
