#pragma once

// Adaptive Gauss-Legendre integration. This is the test-facing oracle that
// validates the closed-form kernel integrals; it deliberately shares no
// antiderivatives with kernels.hpp.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fareymmd {

struct QuadratureConfig {
  double abs_tol = 1e-12;  // target absolute error for the whole interval
  int max_depth = 50;      // bisection limit per panel chain
};

namespace quad_detail {

// 15-point Gauss-Legendre rule on [-1, 1] (exact through degree 29). Nodes
// are the roots of P_15, found by Newton iteration from the Chebyshev guess;
// weights via w = 2 / ((1 - x^2) P'(x)^2).
struct GaussLegendre15 {
  static constexpr int kOrder = 15;
  std::array<double, kOrder> node{};
  std::array<double, kOrder> weight{};

  GaussLegendre15() {
    // Long-double Newton so the stored doubles are correctly rounded.
    const int m = (kOrder + 1) / 2;
    for (int i = 0; i < m; ++i) {
      long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) /
                               (kOrder + 0.5L));
      long double pp = 0.0L;
      for (int iter = 0; iter < 100; ++iter) {
        long double p1 = 1.0L;
        long double p2 = 0.0L;
        for (int j = 1; j <= kOrder; ++j) {
          const long double p3 = p2;
          p2 = p1;
          p1 = ((2.0L * j - 1.0L) * z * p2 - (j - 1.0L) * p3) / j;
        }
        pp = kOrder * (z * p1 - p2) / (z * z - 1.0L);
        const long double dz = p1 / pp;
        z -= dz;
        if (std::abs(dz) < 1e-19L) break;
      }
      node[i] = static_cast<double>(-z);
      node[kOrder - 1 - i] = static_cast<double>(z);
      weight[i] = static_cast<double>(2.0L / ((1.0L - z * z) * pp * pp));
      weight[kOrder - 1 - i] = weight[i];
    }
  }

  static const GaussLegendre15& instance() {
    static const GaussLegendre15 rule;
    return rule;
  }
};

template <class F>
double gl15(F&& f, double a, double b) {
  const auto& rule = GaussLegendre15::instance();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < GaussLegendre15::kOrder; ++i) {
    s += rule.weight[i] * f(mid + half * rule.node[i]);
  }
  return s * half;
}

template <class F>
double integrate_panel(F&& f, double a, double b, double tol, int depth) {
  const double whole = gl15(f, a, b);
  const double mid = 0.5 * (a + b);
  const double split = gl15(f, a, mid) + gl15(f, mid, b);
  if (std::abs(whole - split) <= tol) return split;
  if (depth <= 0) {
    throw std::runtime_error("quadrature: max_depth reached before tolerance");
  }
  return integrate_panel(f, a, mid, 0.5 * tol, depth - 1) +
         integrate_panel(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace quad_detail

// Estimate of int_a^b f with estimated absolute error <= cfg.abs_tol.
// Throws std::runtime_error when cfg.max_depth is hit before the tolerance.
template <class F>
double integrate(F&& f, double a, double b, QuadratureConfig cfg = {}) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (!(cfg.abs_tol > 0.0) || cfg.max_depth < 1) {
    throw std::invalid_argument("integrate: bad quadrature config");
  }
  if (a == b) return 0.0;
  return quad_detail::integrate_panel(f, a, b, cfg.abs_tol, cfg.max_depth);
}

// Nested 1-D rules over [0,1]^2; each axis is charged half of the error
// budget. The inner integral runs 8x below its half so its noise stays under
// the outer rule's refinement thresholds, and it is split at the outer
// coordinate: for distance-based integrands the |x - y| kink would otherwise
// sit inside the first panel's node gap, where whole- and split-panel
// estimates can agree on a wrong value.
template <class F2>
double integrate2d(F2&& f, QuadratureConfig cfg = {}) {
  const QuadratureConfig inner{cfg.abs_tol / 32.0, cfg.max_depth};
  const QuadratureConfig outer{cfg.abs_tol / 2.0, cfg.max_depth};
  return integrate(
      [&](double y) {
        const auto fx = [&](double x) { return f(x, y); };
        return integrate(fx, 0.0, y, inner) + integrate(fx, y, 1.0, inner);
      },
      0.0, 1.0, outer);
}

}  // namespace fareymmd
