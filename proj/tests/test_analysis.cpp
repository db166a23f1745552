#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "fareymmd/analysis.hpp"

using namespace fareymmd;

namespace {

std::vector<CurvePoint> planted_curve(double exponent, double scale, std::int64_t n_max) {
  std::vector<CurvePoint> curve;
  for (std::int64_t n = 2; n <= n_max; ++n) {
    CurvePoint p;
    p.n = n;
    p.size = 0;
    p.value = scale * std::pow(static_cast<double>(n), exponent);
    p.normalized = p.value * std::pow(static_cast<double>(n), 1.5);
    curve.push_back(p);
  }
  return curve;
}

}  // namespace

TEST_CASE("rate fit recovers planted power laws exactly") {
  const RateFit f32 = rate_fit(planted_curve(-1.5, 1.0, 100), 2, 100, "planted");
  CHECK(std::abs(f32.slope - (-1.5)) < 1e-12);
  CHECK(f32.residual_l2 < 1e-12);
  CHECK(std::abs(f32.intercept) < 1e-12);

  const RateFit f34 = rate_fit(planted_curve(-0.75, 2.5, 150), 10, 150, "planted");
  CHECK(std::abs(f34.slope - (-0.75)) < 1e-12);
  CHECK(f34.residual_l2 < 1e-12);
  CHECK(std::abs(f34.intercept - std::log(2.5)) < 1e-12);
  CHECK(f34.n_lo == 10);
  CHECK(f34.n_hi == 150);
  CHECK(f34.quantity == "planted");
}

TEST_CASE("rate fit input validation") {
  const auto curve = planted_curve(-1.5, 1.0, 20);
  CHECK_THROWS_AS(rate_fit(curve, 10, 10, "q"), std::invalid_argument);
  CHECK_THROWS_AS(rate_fit(curve, 18, 30, "q"), std::invalid_argument);  // two points
  auto bad = curve;
  bad[5].value = 0.0;
  CHECK_THROWS_AS(rate_fit(bad, 2, 20, "q"), std::invalid_argument);
}

TEST_CASE("normalized curve on the first indices") {
  const auto curve = normalized_curve(KernelSpec::brownian(), 10);
  REQUIRE(curve.size() == 9);
  CHECK(curve[0].n == 2);
  CHECK(curve[0].size == 3);
  CHECK(std::abs(curve[0].value - 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(curve[0].normalized - std::pow(2.0, 1.5) / 6.0) <= 1e-12);
  CHECK(curve[1].n == 3);
  CHECK(curve[1].size == 5);
  CHECK(std::abs(curve[1].value - std::sqrt(7.0 / 900.0)) <= 1e-12);
  for (const CurvePoint& p : curve) {
    CHECK(p.normalized > 0.0);
    CHECK(p.size == farey_size(p.n));
  }
  CHECK_THROWS_AS(normalized_curve(KernelSpec::brownian(), 1), std::invalid_argument);
}

TEST_CASE("preferred methods") {
  const KernelEvaluator brownian(KernelSpec::brownian());
  CHECK(preferred_method(brownian, 5) == MmdMethod::Lemma1);
  CHECK(preferred_method(brownian, 1) == MmdMethod::Fast);  // F_1 lacks 1/2
  const KernelEvaluator m32(KernelSpec::matern(MaternOrder::ThreeHalves));
  CHECK(preferred_method(m32, 5) == MmdMethod::Fast);
  const KernelEvaluator ibm5(KernelSpec::integrated_bm(5));
  CHECK(preferred_method(ibm5, 5) == MmdMethod::Naive);
  const KernelEvaluator expxy(KernelSpec::exp_product());
  CHECK(preferred_method(expxy, 5) == MmdMethod::Naive);
}

TEST_CASE("curves are identical for any thread count") {
  const auto spec = KernelSpec::matern(MaternOrder::ThreeHalves);
  const auto seq1 = normalized_curve(spec, 40, 1);
  const auto seq4 = normalized_curve(spec, 40, 4);
  const auto seq0 = normalized_curve(spec, 40, 0);  // auto
  REQUIRE(seq1.size() == seq4.size());
  REQUIRE(seq1.size() == seq0.size());
  for (std::size_t i = 0; i < seq1.size(); ++i) {
    CHECK(seq1[i].value == seq4[i].value);
    CHECK(seq1[i].normalized == seq4[i].normalized);
    CHECK(seq1[i].value == seq0[i].value);
  }
}

TEST_CASE("brownian slope over a short window is near -3/2") {
  const auto curve = normalized_curve(KernelSpec::brownian(), 120);
  const RateFit fit = rate_fit(curve, 50, 120, "mmd:brownian");
  CHECK(fit.slope < -1.2);
  CHECK(fit.slope > -1.8);
  CHECK(std::isfinite(fit.residual_l2));
}

TEST_CASE("mertens ratio values") {
  CHECK(std::abs(mertens_ratio(1) - 2.0 * std::numbers::pi * std::numbers::pi / 3.0) <=
        1e-12);
  CHECK(std::abs(mertens_ratio(250) -
                 19025.0 * std::numbers::pi * std::numbers::pi / 187500.0) <= 1e-12);
  CHECK(std::abs(mertens_ratio(250) - 1.0) < 0.002);
  CHECK(std::abs(mertens_ratio(2000) - 1.0) < 0.01);
  CHECK_THROWS_AS(mertens_ratio(0), std::invalid_argument);
}

TEST_CASE("mertens deviation decays in the windowed-max sense") {
  // Windowed max of |ratio - 1| over blocks of 100 indices, n in [100, 2000).
  std::vector<double> window_max;
  for (std::int64_t lo = 100; lo < 2000; lo += 100) {
    double m = 0.0;
    for (std::int64_t n = lo; n < lo + 100; ++n) {
      m = std::max(m, std::abs(mertens_ratio(n) - 1.0));
    }
    window_max.push_back(m);
  }
  for (std::size_t i = 1; i < window_max.size(); ++i) {
    CHECK(window_max[i] <= window_max[i - 1] * 1.05);
    CHECK(window_max[i] > 0.0);
  }
}
