#pragma once

// Exact Farey sequence generation and counting.

#include <Eigen/Core>
#include <cstdint>
#include <vector>

#include "fareymmd/rational.hpp"

namespace fareymmd {

// Largest accepted sequence index. The neighbor recurrence's intermediate
// integers (k*c, k*d <= 2n) stay far below 2^63 here; the binding constraint
// is the O(n^2) memory for the points themselves (~0.5 GB at n = 10^4).
inline constexpr std::int64_t kMaxFareyIndex = 10'000;

struct FareySequence {
  std::int64_t index{1};         // the n in F_n
  std::vector<Rational> points;  // ascending, from 0/1 to 1/1

  std::size_t size() const { return points.size(); }
};

// Euler totients phi(1..n), by the standard prime-driven sieve.
std::vector<std::uint32_t> totient_sieve(std::int64_t n);

// |F_n| = 1 + sum_{k<=n} phi(k), without materializing the sequence.
std::uint64_t farey_size(std::int64_t n);

// F_n by the neighbor recurrence: after consecutive terms a/b, c/d the next
// term is (kc - a)/(kd - b) with k = floor((n + b) / d).
FareySequence farey_sequence(std::int64_t n);

// True iff every consecutive pair a/b, c/d satisfies bc - ad = 1.
bool check_neighbors(const FareySequence& seq);

// Points rounded once to double, ascending.
Eigen::VectorXd to_real_points(const FareySequence& seq);

}  // namespace fareymmd
