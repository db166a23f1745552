#include "fareymmd/mmd.hpp"

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "fareymmd/summation.hpp"

namespace fareymmd {

const char* to_string(MmdMethod m) {
  switch (m) {
    case MmdMethod::Naive: return "naive";
    case MmdMethod::Fast: return "fast";
    case MmdMethod::Lemma1: return "lemma1";
  }
  return "?";
}

namespace {

constexpr double kNegativeTolerance = -1e-10;

void validate_points(const Eigen::Ref<const Eigen::VectorXd>& x) {
  if (x.size() < 1) throw std::invalid_argument("mmd: need at least one point");
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) {
      throw std::domain_error("mmd: points must lie in [0,1]");
    }
  }
}

long double embedding_sum(const KernelEvaluator& k,
                          const Eigen::Ref<const Eigen::VectorXd>& x) {
  CompensatedSum<long double> s;
  for (Eigen::Index i = 0; i < x.size(); ++i) s.add(k.mean_embedding_ld(x[i]));
  return s.value();
}

long double gram_diagonal(const KernelEvaluator& k,
                          const Eigen::Ref<const Eigen::VectorXd>& x) {
  CompensatedSum<long double> s;
  for (Eigen::Index i = 0; i < x.size(); ++i) s.add(k.eval_ld(x[i], x[i]));
  return s.value();
}

long double gram_upper_naive(const KernelEvaluator& k,
                             const Eigen::Ref<const Eigen::VectorXd>& x) {
  CompensatedSum<long double> s;
  for (Eigen::Index j = 1; j < x.size(); ++j) {
    const long double xj = x[j];
    for (Eigen::Index i = 0; i < j; ++i) s.add(k.eval_ld(x[i], xj));
  }
  return s.value();
}

// sum_{i<j} K(x_i, x_j) for sorted points via the x <= y factorization
//   K(x, y) = sum_t q_t(x) r_t(y) exp(-alpha (y - x)).
// Each term keeps a compensated prefix sum C_t = sum_i q_t(x_i) e^{a(x_i-A)}
// relative to a running anchor A <= x_i, so the pair (i, j) contributes
// r_t(x_j) e^{-a(x_j-A)} q_t(x_i) e^{a(x_i-A)} with both exponentials built
// from at most one bounded-argument exp each (no telescoped products, no
// overflow: the anchor is rebased whenever a(x_j - A) would top 500).
long double gram_upper_fast(const KernelEvaluator& k,
                            const Eigen::Ref<const Eigen::VectorXd>& x) {
  const auto& terms = k.separable_terms();
  const long double alpha = k.separable_alpha();
  const std::size_t t_count = terms.size();
  constexpr long double kRebaseSpan = 500.0L;

  std::vector<CompensatedSum<long double>> prefix(t_count);
  CompensatedSum<long double> total;
  long double anchor = x[0];
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const long double xj = x[j];
    if (alpha != 0.0L && alpha * (xj - anchor) > kRebaseSpan) {
      const long double shift = std::exp(-alpha * (xj - anchor));
      for (auto& c : prefix) c.scale(shift);
      anchor = xj;
    }
    const long double down =
        alpha == 0.0L ? 1.0L : std::exp(-alpha * (xj - anchor));
    if (j > 0) {
      for (std::size_t t = 0; t < t_count; ++t) {
        long double r = 0.0L;
        const auto& rc = terms[t].r;
        for (std::size_t c = rc.size(); c-- > 0;) r = r * xj + rc[c];
        total.add(r * down * prefix[t].value());
      }
    }
    const long double up =
        alpha == 0.0L ? 1.0L : std::exp(alpha * (xj - anchor));
    for (std::size_t t = 0; t < t_count; ++t) {
      long double q = 0.0L;
      const auto& qc = terms[t].q;
      for (std::size_t c = qc.size(); c-- > 0;) q = q * xj + qc[c];
      prefix[t].add(q * up);
    }
  }
  return total.value();
}

MmdResult finish(long double double_integral, long double mu_sum,
                 long double diagonal, long double upper, std::int64_t n_points,
                 MmdMethod method, std::string kernel_id, std::int64_t seq_index) {
  const long double n = static_cast<long double>(n_points);
  const long double m2 =
      double_integral - 2.0L * mu_sum / n + (diagonal + 2.0L * upper) / (n * n);
  if (m2 < static_cast<long double>(kNegativeTolerance)) {
    throw std::runtime_error("mmd: squared MMD " + std::to_string(static_cast<double>(m2)) +
                             " fell below -1e-10; kernel or accumulation inconsistency");
  }
  MmdResult r;
  r.mmd_squared = static_cast<double>(m2);
  r.mmd = std::sqrt(std::max(r.mmd_squared, 0.0));
  r.method = method;
  r.kernel_id = std::move(kernel_id);
  r.seq_index = seq_index;
  r.n_points = n_points;
  return r;
}

void check_sorted_exact(std::span<const Rational> pts, const char* who) {
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i] < pts[i - 1]) {
      throw std::invalid_argument(std::string(who) + ": points must be sorted ascending");
    }
  }
}

// Exact accumulation helper: all statistics here are sums over groups with a
// shared denominator q, scaled to the common denominator L = lcm of the
// distinct q. Group sums stay integral, so no per-term gcd is needed and the
// single final reduction keeps the arithmetic exact at any size.
struct GroupedSquares {
  std::map<std::int64_t, BigUint> groups;  // q -> integral group sum

  void add(std::int64_t q, unsigned __int128 value_abs) {
    const BigUint v = BigUint::from_u128(value_abs);
    auto [it, inserted] = groups.try_emplace(q);
    it->second += v * v;
  }

  BigUint lcm() const {
    BigUint l(1);
    for (const auto& [q, unused] : groups) {
      const std::uint64_t uq = static_cast<std::uint64_t>(q);
      const std::uint64_t g = std::gcd(l.mod_u64(uq), uq);
      l = l * BigUint(uq / g);
    }
    return l;
  }

  // sum_q group(q) * (L/q)^2; the caller divides by (scale * L)^2.
  BigUint scaled_numerator(const BigUint& l) const {
    BigUint num(0);
    for (const auto& [q, sum] : groups) {
      const BigUint lq = BigUint::divexact(l, BigUint(static_cast<std::uint64_t>(q)));
      num += sum * (lq * lq);
    }
    return num;
  }
};

}  // namespace

MmdResult mmd_squared_naive(const KernelEvaluator& kernel,
                            const Eigen::Ref<const Eigen::VectorXd>& points,
                            std::int64_t seq_index) {
  validate_points(points);
  return finish(kernel.double_integral_ld(), embedding_sum(kernel, points),
                gram_diagonal(kernel, points), gram_upper_naive(kernel, points),
                points.size(), MmdMethod::Naive, kernel.id(), seq_index);
}

MmdResult mmd_squared_fast(const KernelEvaluator& kernel,
                           const Eigen::Ref<const Eigen::VectorXd>& sorted_points,
                           std::int64_t seq_index) {
  validate_points(sorted_points);
  if (!kernel.supports_separable()) {
    throw std::invalid_argument("mmd fast path: kernel " + kernel.id() +
                                " has no separable factorization");
  }
  for (Eigen::Index i = 1; i < sorted_points.size(); ++i) {
    if (sorted_points[i] < sorted_points[i - 1]) {
      throw std::invalid_argument("mmd fast path: points must be sorted ascending");
    }
  }
  return finish(kernel.double_integral_ld(), embedding_sum(kernel, sorted_points),
                gram_diagonal(kernel, sorted_points),
                gram_upper_fast(kernel, sorted_points), sorted_points.size(),
                MmdMethod::Fast, kernel.id(), seq_index);
}

BigRational franel_sum(std::span<const Rational> sorted_points) {
  const std::size_t n = sorted_points.size();
  if (n == 0) throw std::invalid_argument("franel_sum: empty point list");
  check_sorted_exact(sorted_points, "franel_sum");

  GroupedSquares acc;
  const __int128 big_n = static_cast<__int128>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& p = sorted_points[i];
    // i/N - p/q over the common denominator N q: r = (i+1) q - p N.
    const __int128 r = static_cast<__int128>(i + 1) * p.den -
                       static_cast<__int128>(p.num) * big_n;
    const unsigned __int128 r_abs =
        r < 0 ? static_cast<unsigned __int128>(-r) : static_cast<unsigned __int128>(r);
    acc.add(p.den, r_abs);
  }
  const BigUint l = acc.lcm();
  const BigUint scale = BigUint(static_cast<std::uint64_t>(n)) * l;
  return BigRational::make(acc.scaled_numerator(l), scale * scale);
}

double l2_discretized(std::span<const Rational> sorted_points) {
  const BigRational f = franel_sum(sorted_points);
  const BigRational mean = BigRational::make(
      f.num(), f.den() * BigUint(static_cast<std::uint64_t>(sorted_points.size())));
  return std::sqrt(mean.to_double());
}

BigRational mikolas_error_x2(std::span<const Rational> points) {
  const std::size_t n = points.size();
  if (n == 0) throw std::invalid_argument("mikolas_error_x2: empty point list");

  GroupedSquares acc;
  for (const Rational& p : points) {
    acc.add(p.den, static_cast<unsigned __int128>(p.num));
  }
  const BigUint l = acc.lcm();
  const BigUint sum_sq = acc.scaled_numerator(l);  // sum x_i^2, over L^2
  // |1/3 - S/(N L^2)| = |N L^2 - 3 S| / (3 N L^2).
  const BigUint n_big(static_cast<std::uint64_t>(n));
  BigUint lhs = n_big * (l * l);
  BigUint rhs = BigUint(3) * sum_sq;
  if (BigUint::compare(lhs, rhs) < 0) std::swap(lhs, rhs);
  return BigRational::make(lhs - rhs, BigUint(3) * n_big * (l * l));
}

DiscrepancyStats discrepancy_stats(std::span<const Rational> sorted_points) {
  DiscrepancyStats s;
  s.franel = franel_sum(sorted_points);
  const BigRational mean = BigRational::make(
      s.franel.num(),
      s.franel.den() * BigUint(static_cast<std::uint64_t>(sorted_points.size())));
  s.l2 = std::sqrt(mean.to_double());
  s.mikolas_x2 = mikolas_error_x2(sorted_points);
  return s;
}

MmdResult mmd_lemma1(std::span<const Rational> sorted_points, std::int64_t seq_index) {
  const std::size_t n = sorted_points.size();
  if (n == 0 || n % 2 == 0) {
    throw std::invalid_argument("mmd_lemma1: needs an odd number of points");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (!(sorted_points[i - 1] < sorted_points[i])) {
      throw std::invalid_argument("mmd_lemma1: points must be strictly increasing");
    }
  }
  const Rational half(1, 2);
  bool has_half = false;
  for (const Rational& p : sorted_points) {
    if (p == half) {
      has_half = true;
      break;
    }
  }
  if (!has_half) {
    throw std::invalid_argument("mmd_lemma1: sequence does not contain 1/2");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Rational& a = sorted_points[i];
    const Rational& b = sorted_points[n - 1 - i];
    // a + b = 1 exactly iff the reduced forms share a denominator and the
    // numerators complete it.
    if (a.den != b.den || a.num + b.num != a.den) {
      throw std::invalid_argument("mmd_lemma1: sequence is not symmetric about 1/2");
    }
  }

  const BigRational franel = franel_sum(sorted_points);
  const std::uint64_t n64 = static_cast<std::uint64_t>(n);
  const BigRational first =
      BigRational::make(franel.num(), franel.den() * BigUint(n64));
  const BigRational second =
      BigRational::make(BigUint(1), BigUint(6) * BigUint(n64) * BigUint(n64));
  if (BigRational::compare(first, second) < 0) {
    throw std::runtime_error("mmd_lemma1: exact closed form went negative");
  }
  const BigRational m2 = BigRational::abs_diff(first, second);

  MmdResult r;
  r.mmd_squared = m2.to_double();
  r.mmd = std::sqrt(std::max(r.mmd_squared, 0.0));
  r.method = MmdMethod::Lemma1;
  r.kernel_id = "brownian";
  r.seq_index = seq_index;
  r.n_points = static_cast<std::int64_t>(n);
  return r;
}

}  // namespace fareymmd
