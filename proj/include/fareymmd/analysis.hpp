#pragma once

// Rate diagnostics over Farey MMD curves: normalized curves, log-log slope
// fits, and the Mertens size ratio.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "fareymmd/farey.hpp"
#include "fareymmd/kernels.hpp"
#include "fareymmd/mmd.hpp"

namespace fareymmd {

struct CurvePoint {
  std::int64_t n{0};       // Farey index
  std::uint64_t size{0};   // N = |F_n|
  double value{0.0};       // MMD(F_n)
  double normalized{0.0};  // value * n^{3/2}
};

// Method the diagnostics use for a kernel: the exact Lemma-1 path for the
// shifted Brownian kernel on F_n with n >= 2, the separable O(N) path where
// one exists, the O(N^2) path otherwise.
MmdMethod preferred_method(const KernelEvaluator& kernel, std::int64_t seq_index);

// One MMD result for a Farey sequence by the preferred method.
MmdResult mmd_for_sequence(const KernelEvaluator& kernel, const FareySequence& seq);

// MMD(F_n) for n = 2..n_max. Computation may fan out across threads (one n
// per task); results are deterministic for any thread count.
std::vector<CurvePoint> normalized_curve(const KernelSpec& spec, std::int64_t n_max,
                                         int threads = 1);

struct RateFit {
  double slope{0.0};
  double intercept{0.0};
  double residual_l2{0.0};
  std::int64_t n_lo{0};
  std::int64_t n_hi{0};
  std::string quantity;
};

// Ordinary least squares of log(value) against log(n) over n in [n_lo, n_hi].
// Requires at least three curve points in the window, all with value > 0.
RateFit rate_fit(std::span<const CurvePoint> curve, std::int64_t n_lo,
                 std::int64_t n_hi, std::string quantity = "mmd");

// farey_size(n) * pi^2 / (3 n^2); tends to 1 under the Mertens asymptotics.
double mertens_ratio(std::int64_t n);

}  // namespace fareymmd
