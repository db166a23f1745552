#pragma once

// Compensated accumulation helpers shared by the discrepancy and kernel-sum
// code paths.

#include <cmath>
#include <cstddef>
#include <vector>

namespace fareymmd {

// Neumaier's variant of Kahan summation. The running error bound is
// ~2 eps * sum |x_i| independent of the number of terms.
template <typename Scalar>
class CompensatedSum {
 public:
  void add(Scalar x) {
    const Scalar t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  // Multiplies the accumulated state (value and compensation) by w. Used when
  // an exponentially weighted prefix sum is rebased to a new anchor.
  void scale(Scalar w) {
    sum_ *= w;
    comp_ *= w;
  }

  Scalar value() const { return sum_ + comp_; }

 private:
  Scalar sum_{0};
  Scalar comp_{0};
};

// Cascade (pairwise) summation; rounding error grows O(log N).
template <typename Scalar>
Scalar pairwise_sum(const Scalar* data, std::size_t count) {
  if (count <= 8) {
    Scalar s{0};
    for (std::size_t i = 0; i < count; ++i) s += data[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

template <typename Scalar>
Scalar pairwise_sum(const std::vector<Scalar>& v) {
  return pairwise_sum(v.data(), v.size());
}

}  // namespace fareymmd
