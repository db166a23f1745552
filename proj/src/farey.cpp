#include "fareymmd/farey.hpp"

#include <numeric>
#include <stdexcept>

namespace fareymmd {

namespace {

void check_index(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("farey: sequence index must be >= 1");
  if (n > kMaxFareyIndex) {
    throw std::overflow_error("farey: sequence index exceeds the supported bound of " +
                              std::to_string(kMaxFareyIndex));
  }
}

}  // namespace

std::vector<std::uint32_t> totient_sieve(std::int64_t n) {
  check_index(n);
  std::vector<std::uint32_t> phi(static_cast<std::size_t>(n) + 1);
  std::iota(phi.begin(), phi.end(), 0u);
  for (std::int64_t k = 2; k <= n; ++k) {
    if (phi[k] == static_cast<std::uint32_t>(k)) {  // k is prime
      for (std::int64_t m = k; m <= n; m += k) {
        phi[m] -= phi[m] / static_cast<std::uint32_t>(k);
      }
    }
  }
  phi.erase(phi.begin());  // drop the unused index 0; phi[i] is now phi(i+1)
  return phi;
}

std::uint64_t farey_size(std::int64_t n) {
  const auto phi = totient_sieve(n);
  std::uint64_t total = 1;
  for (const std::uint32_t v : phi) total += v;
  return total;
}

FareySequence farey_sequence(std::int64_t n) {
  check_index(n);
  FareySequence seq;
  seq.index = n;
  seq.points.reserve(static_cast<std::size_t>(farey_size(n)));
  seq.points.push_back(Rational::from_reduced(0, 1));
  std::int64_t a = 0, b = 1, c = 1, d = n;
  while (true) {
    seq.points.push_back(Rational::from_reduced(c, d));
    if (c == 1 && d == 1) break;
    const std::int64_t k = (n + b) / d;
    const std::int64_t next_num = k * c - a;
    const std::int64_t next_den = k * d - b;
    a = c;
    b = d;
    c = next_num;
    d = next_den;
  }
  return seq;
}

bool check_neighbors(const FareySequence& seq) {
  if (seq.points.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < seq.points.size(); ++i) {
    const Rational& lo = seq.points[i];
    const Rational& hi = seq.points[i + 1];
    const __int128 det = static_cast<__int128>(lo.den) * hi.num -
                         static_cast<__int128>(lo.num) * hi.den;
    if (det != 1) return false;
  }
  return true;
}

Eigen::VectorXd to_real_points(const FareySequence& seq) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(seq.points.size()));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    x[i] = seq.points[static_cast<std::size_t>(i)].to_double();
  }
  return x;
}

}  // namespace fareymmd
