#include "fareymmd/analysis.hpp"

#include <Eigen/QR>
#include <atomic>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace fareymmd {

MmdMethod preferred_method(const KernelEvaluator& kernel, std::int64_t seq_index) {
  if (kernel.spec().family == KernelFamily::BrownianShift && seq_index >= 2) {
    return MmdMethod::Lemma1;
  }
  if (kernel.supports_separable()) return MmdMethod::Fast;
  return MmdMethod::Naive;
}

MmdResult mmd_for_sequence(const KernelEvaluator& kernel, const FareySequence& seq) {
  switch (preferred_method(kernel, seq.index)) {
    case MmdMethod::Lemma1:
      return mmd_lemma1(seq.points, seq.index);
    case MmdMethod::Fast:
      return mmd_squared_fast(kernel, to_real_points(seq), seq.index);
    case MmdMethod::Naive:
      return mmd_squared_naive(kernel, to_real_points(seq), seq.index);
  }
  throw std::logic_error("mmd_for_sequence: bad method tag");
}

namespace {

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

std::vector<CurvePoint> normalized_curve(const KernelSpec& spec, std::int64_t n_max,
                                         int threads) {
  if (n_max < 2) throw std::invalid_argument("normalized_curve: n_max must be >= 2");
  const KernelEvaluator kernel(spec);
  std::vector<CurvePoint> curve(static_cast<std::size_t>(n_max - 1));

  const auto compute_one = [&](std::int64_t n) {
    const FareySequence seq = farey_sequence(n);
    const MmdResult r = mmd_for_sequence(kernel, seq);
    CurvePoint p;
    p.n = n;
    p.size = seq.size();
    p.value = r.mmd;
    p.normalized = r.mmd * std::pow(static_cast<double>(n), 1.5);
    curve[static_cast<std::size_t>(n - 2)] = p;
  };

  const int worker_count = std::min<int>(resolve_threads(threads),
                                         static_cast<int>(curve.size()));
  if (worker_count <= 1) {
    for (std::int64_t n = 2; n <= n_max; ++n) compute_one(n);
    return curve;
  }
  std::atomic<std::int64_t> next{2};
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      while (true) {
        const std::int64_t n = next.fetch_add(1);
        if (n > n_max) break;
        compute_one(n);
      }
    });
  }
  for (auto& t : workers) t.join();
  return curve;
}

RateFit rate_fit(std::span<const CurvePoint> curve, std::int64_t n_lo,
                 std::int64_t n_hi, std::string quantity) {
  if (n_lo >= n_hi) throw std::invalid_argument("rate_fit: needs n_lo < n_hi");
  std::vector<double> log_n;
  std::vector<double> log_v;
  for (const CurvePoint& p : curve) {
    if (p.n < n_lo || p.n > n_hi) continue;
    if (!(p.value > 0.0)) {
      throw std::invalid_argument("rate_fit: values must be positive (log undefined)");
    }
    log_n.push_back(std::log(static_cast<double>(p.n)));
    log_v.push_back(std::log(p.value));
  }
  if (log_n.size() < 3) {
    throw std::invalid_argument("rate_fit: needs at least three points in [n_lo, n_hi]");
  }

  const Eigen::Index k = static_cast<Eigen::Index>(log_n.size());
  Eigen::MatrixXd a(k, 2);
  Eigen::VectorXd b(k);
  for (Eigen::Index i = 0; i < k; ++i) {
    a(i, 0) = 1.0;
    a(i, 1) = log_n[static_cast<std::size_t>(i)];
    b(i) = log_v[static_cast<std::size_t>(i)];
  }
  const Eigen::Vector2d beta = a.colPivHouseholderQr().solve(b);

  RateFit fit;
  fit.intercept = beta(0);
  fit.slope = beta(1);
  fit.residual_l2 = (a * beta - b).norm();
  fit.n_lo = n_lo;
  fit.n_hi = n_hi;
  fit.quantity = std::move(quantity);
  return fit;
}

double mertens_ratio(std::int64_t n) {
  const double size = static_cast<double>(farey_size(n));
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  return size * std::numbers::pi * std::numbers::pi / (3.0 * nn);
}

}  // namespace fareymmd
