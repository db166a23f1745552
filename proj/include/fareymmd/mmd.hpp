#pragma once

// Squared maximum mean discrepancies between the uniform measure on [0,1]
// and an empirical point set, plus the exact rational discrepancy statistics.

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>

#include "fareymmd/bigint.hpp"
#include "fareymmd/kernels.hpp"
#include "fareymmd/rational.hpp"

namespace fareymmd {

enum class MmdMethod { Naive, Fast, Lemma1 };
const char* to_string(MmdMethod m);

struct MmdResult {
  double mmd_squared{0.0};
  double mmd{0.0};  // sqrt(max(mmd_squared, 0))
  MmdMethod method{MmdMethod::Naive};
  std::string kernel_id;
  std::int64_t seq_index{0};  // Farey index when known, 0 otherwise
  std::int64_t n_points{0};
};

// Three-term closed form
//   mmd^2 = II - (2/N) sum_i m(x_i) + (1/N^2) sum_{i,j} K(x_i, x_j)
// with II the double integral and m the mean embedding. The Gram part walks
// the diagonal plus twice the strict upper triangle with compensated
// extended-precision accumulation. A squared MMD below -1e-10 raises a
// numerical-consistency error instead of being clamped.
MmdResult mmd_squared_naive(const KernelEvaluator& kernel,
                            const Eigen::Ref<const Eigen::VectorXd>& points,
                            std::int64_t seq_index = 0);

// Same quantity with the Gram double sum folded into O(N * T) anchored
// prefix recurrences of the kernel's x <= y factorization. Requires sorted
// input and a kernel with a separable factorization (brownian, matern,
// ibm fold <= 2).
MmdResult mmd_squared_fast(const KernelEvaluator& kernel,
                           const Eigen::Ref<const Eigen::VectorXd>& sorted_points,
                           std::int64_t seq_index = 0);

// Exact closed form for K(x,y) = 1 + min(x,y):
//   mmd^2 = (1/N) sum_i (i/N - x_i)^2 - 1/(6 N^2),
// valid for odd-length strictly increasing sequences that contain 1/2 and are
// symmetric about it. All three preconditions are checked exactly on the
// rational representation; arithmetic stays rational until the final
// conversion.
MmdResult mmd_lemma1(std::span<const Rational> sorted_points,
                     std::int64_t seq_index = 0);

// Exact sum_i (i/N - x_i)^2 over the sorted exact points.
BigRational franel_sum(std::span<const Rational> sorted_points);

// sqrt(franel_sum / N).
double l2_discretized(std::span<const Rational> sorted_points);

// Exact |1/3 - (1/N) sum_i x_i^2|, the quadrature error of f(x) = x^2.
BigRational mikolas_error_x2(std::span<const Rational> points);

struct DiscrepancyStats {
  BigRational franel;
  double l2{0.0};
  BigRational mikolas_x2;
};
DiscrepancyStats discrepancy_stats(std::span<const Rational> sorted_points);

}  // namespace fareymmd
