#include "fareymmd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace fareymmd {

namespace {

using u128 = unsigned __int128;

u128 factorial_u128(int k) {
  u128 f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<unsigned>(i);
  return f;
}

u128 binomial_u128(int n, int k) {
  // Exact: multiply before each division keeps intermediates integral.
  u128 b = 1;
  for (int i = 1; i <= k; ++i) {
    b = b * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  }
  return b;
}

long double ratio_ld(u128 num, u128 den) {
  return static_cast<long double>(num) / static_cast<long double>(den);
}

void check_domain(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw std::domain_error(std::string("kernel: ") + name + " outside [0,1]");
  }
}

template <typename Scalar>
Scalar poly_eval(const std::vector<long double>& coeff, Scalar x) {
  Scalar s{0};
  for (std::size_t i = coeff.size(); i-- > 0;) {
    s = s * x + static_cast<Scalar>(coeff[i]);
  }
  return s;
}

// sum_{k>=1} 1/(k k!), the exact value of int_0^1 (e^y - 1)/y dy.
long double exp_product_double_integral() {
  long double sum = 0.0L;
  long double term = 1.0L;  // 1/(k k!) * k = 1/k! running piece
  for (int k = 1; k <= 40; ++k) {
    term /= k;  // now 1/k!
    const long double t = term / k;
    sum += t;
    if (t < 1e-24L * sum) break;
  }
  return sum;
}

}  // namespace

KernelSpec KernelSpec::brownian() { return KernelSpec{KernelFamily::BrownianShift}; }

KernelSpec KernelSpec::matern(MaternOrder nu) {
  const double two_nu = static_cast<double>(static_cast<int>(nu));
  return matern(nu, std::sqrt(two_nu));  // makes sqrt(2 nu)/lambda = 1
}

KernelSpec KernelSpec::matern(MaternOrder nu, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("matern: lambda must be > 0");
  KernelSpec s;
  s.family = KernelFamily::Matern;
  s.nu = nu;
  s.lambda = lambda;
  return s;
}

KernelSpec KernelSpec::integrated_bm(int fold) {
  if (fold < 0 || fold > kMaxIbmFold) {
    throw std::invalid_argument("integrated_bm: fold must be in [0, " +
                                std::to_string(kMaxIbmFold) + "]");
  }
  KernelSpec s;
  s.family = KernelFamily::IntegratedBm;
  s.fold = fold;
  return s;
}

KernelSpec KernelSpec::exp_product() {
  KernelSpec s;
  s.family = KernelFamily::ExpProduct;
  return s;
}

std::string KernelSpec::id() const {
  switch (family) {
    case KernelFamily::BrownianShift:
      return "brownian";
    case KernelFamily::Matern:
      switch (nu) {
        case MaternOrder::Half: return "matern12";
        case MaternOrder::ThreeHalves: return "matern32";
        case MaternOrder::FiveHalves: return "matern52";
      }
      break;
    case KernelFamily::IntegratedBm:
      return "ibm" + std::to_string(fold);
    case KernelFamily::ExpProduct:
      return "expxy";
  }
  throw std::logic_error("KernelSpec: corrupt family tag");
}

KernelSpec KernelSpec::parse(const std::string& text) {
  std::string id = text;
  std::string lambda_part;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    id = text.substr(0, colon);
    lambda_part = text.substr(colon + 1);
  }

  KernelSpec spec;
  if (id == "brownian") {
    spec = brownian();
  } else if (id == "matern12") {
    spec = matern(MaternOrder::Half);
  } else if (id == "matern32") {
    spec = matern(MaternOrder::ThreeHalves);
  } else if (id == "matern52") {
    spec = matern(MaternOrder::FiveHalves);
  } else if (id == "expxy") {
    spec = exp_product();
  } else if (id.rfind("ibm", 0) == 0 && id.size() > 3) {
    int fold = 0;
    for (std::size_t i = 3; i < id.size(); ++i) {
      if (id[i] < '0' || id[i] > '9' || fold > kMaxIbmFold) {
        throw std::invalid_argument("unknown kernel id: " + text);
      }
      fold = fold * 10 + (id[i] - '0');
    }
    spec = integrated_bm(fold);
  } else {
    throw std::invalid_argument("unknown kernel id: " + text);
  }

  if (!lambda_part.empty()) {
    if (!spec.has_lambda()) {
      throw std::invalid_argument("kernel " + id + " does not take a lambda parameter");
    }
    std::size_t used = 0;
    double lambda = 0.0;
    try {
      lambda = std::stod(lambda_part, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad lambda in kernel spec: " + text);
    }
    if (used != lambda_part.size() || !(lambda > 0.0)) {
      throw std::invalid_argument("bad lambda in kernel spec: " + text);
    }
    spec.lambda = lambda;
  }
  return spec;
}

KernelEvaluator::KernelEvaluator(const KernelSpec& spec) : spec_(spec) {
  switch (spec_.family) {
    case KernelFamily::BrownianShift:
      break;
    case KernelFamily::Matern: {
      if (!(spec_.lambda > 0.0)) {
        throw std::invalid_argument("matern: lambda must be > 0");
      }
      const long double two_nu = static_cast<long double>(static_cast<int>(spec_.nu));
      alpha_ = std::sqrt(two_nu) / static_cast<long double>(spec_.lambda);
      break;
    }
    case KernelFamily::IntegratedBm:
      if (spec_.fold < 0 || spec_.fold > kMaxIbmFold) {
        throw std::invalid_argument("integrated_bm: fold out of range");
      }
      build_ibm_tables();
      break;
    case KernelFamily::ExpProduct:
      break;
  }
  build_separable();
  double_integral_ = compute_double_integral();
}

void KernelEvaluator::build_ibm_tables() {
  const int m = spec_.fold;
  const u128 mfact = factorial_u128(m);
  const u128 mfact2 = mfact * mfact;

  ibm_diag_.resize(m + 1);
  ibm_embed_main_.resize(m + 1);
  for (int k = 0; k <= m; ++k) {
    const u128 kfact = factorial_u128(k);
    ibm_diag_[k] = ratio_ld(1, kfact * kfact);
    ibm_embed_main_[k] = ratio_ld(1, kfact * kfact * static_cast<unsigned>(k + 1));
  }

  // Integral part of the pointwise value, for x <= y:
  //   sum_j binom(m,j)/((m!)^2 (m+j+1)) x^{m+j+1} (y-x)^{m-j}.
  ibm_tail_.resize(m + 1);
  for (int j = 0; j <= m; ++j) {
    ibm_tail_[j] = ratio_ld(binomial_u128(m, j),
                            mfact2 * static_cast<unsigned>(m + j + 1));
  }

  // Mean embedding tail:
  //   sum_i binom(m+1,i)/((m!)^2 (m+1)(m+i+1)) y^{m+i+1} (1-y)^{m+1-i}.
  ibm_embed_tail_.resize(m + 2);
  for (int i = 0; i <= m + 1; ++i) {
    ibm_embed_tail_[i] =
        ratio_ld(binomial_u128(m + 1, i),
                 mfact2 * static_cast<unsigned>(m + 1) * static_cast<unsigned>(m + i + 1));
  }
}

template <typename Scalar>
Scalar KernelEvaluator::eval_impl(Scalar x, Scalar y) const {
  switch (spec_.family) {
    case KernelFamily::BrownianShift:
      return Scalar(1) + std::min(x, y);
    case KernelFamily::Matern: {
      const Scalar t = static_cast<Scalar>(alpha_) * std::abs(x - y);
      switch (spec_.nu) {
        case MaternOrder::Half:
          return std::exp(-t);
        case MaternOrder::ThreeHalves:
          return (Scalar(1) + t) * std::exp(-t);
        case MaternOrder::FiveHalves:
          return (Scalar(1) + t + t * t / Scalar(3)) * std::exp(-t);
      }
      break;
    }
    case KernelFamily::IntegratedBm: {
      if (spec_.fold == 0) return Scalar(1) + std::min(x, y);  // same closed form as brownian
      if (x > y) std::swap(x, y);
      const int m = spec_.fold;
      const Scalar s = poly_eval(ibm_diag_, x * y);
      const Scalar dx = y - x;
      Scalar dxp[kMaxIbmFold + 1];
      dxp[0] = Scalar(1);
      for (int t = 1; t <= m; ++t) dxp[t] = dxp[t - 1] * dx;
      Scalar xp = Scalar(1);
      for (int t = 0; t <= m; ++t) xp *= x;  // x^{m+1}
      Scalar tail{0};
      for (int j = 0; j <= m; ++j) {
        tail += static_cast<Scalar>(ibm_tail_[j]) * xp * dxp[m - j];
        xp *= x;
      }
      return s + tail;
    }
    case KernelFamily::ExpProduct:
      return std::exp(x * y);
  }
  throw std::logic_error("KernelEvaluator: corrupt family tag");
}

namespace {

// int_0^u p(alpha s) e^{-alpha s} ds for the three half-integer Matern
// polynomials, written with expm1 so small arguments lose no precision.
template <typename Scalar>
Scalar matern_embedding_half(MaternOrder nu, Scalar alpha, Scalar u) {
  const Scalar t = alpha * u;
  const Scalar em = std::expm1(-t);  // e^{-t} - 1
  switch (nu) {
    case MaternOrder::Half:
      return -em / alpha;
    case MaternOrder::ThreeHalves:
      return (-Scalar(2) * em - t * std::exp(-t)) / alpha;
    case MaternOrder::FiveHalves:
      return (-Scalar(8) * em - std::exp(-t) * t * (Scalar(5) + t)) / (Scalar(3) * alpha);
  }
  throw std::logic_error("matern_embedding_half: bad order");
}

}  // namespace

template <typename Scalar>
Scalar KernelEvaluator::embedding_impl(Scalar y) const {
  switch (spec_.family) {
    case KernelFamily::BrownianShift:
      return Scalar(1) + Scalar(0.5) * (Scalar(2) - y) * y;
    case KernelFamily::Matern: {
      const Scalar alpha = static_cast<Scalar>(alpha_);
      return matern_embedding_half(spec_.nu, alpha, y) +
             matern_embedding_half(spec_.nu, alpha, Scalar(1) - y);
    }
    case KernelFamily::IntegratedBm: {
      if (spec_.fold == 0) {
        return Scalar(1) + Scalar(0.5) * (Scalar(2) - y) * y;  // same as brownian
      }
      const int m = spec_.fold;
      const Scalar main = poly_eval(ibm_embed_main_, y);
      const Scalar u = Scalar(1) - y;
      Scalar up[kMaxIbmFold + 2];
      up[0] = Scalar(1);
      for (int t = 1; t <= m + 1; ++t) up[t] = up[t - 1] * u;
      Scalar yp = Scalar(1);
      for (int t = 0; t <= m; ++t) yp *= y;  // y^{m+1}
      Scalar tail{0};
      for (int i = 0; i <= m + 1; ++i) {
        tail += static_cast<Scalar>(ibm_embed_tail_[i]) * yp * up[m + 1 - i];
        yp *= y;
      }
      return main + tail;
    }
    case KernelFamily::ExpProduct: {
      if (std::abs(y) < Scalar(1e-4)) {
        // 4-term Taylor of (e^y - 1)/y; the next term is below 1e-18 here.
        return Scalar(1) + y / Scalar(2) + y * y / Scalar(6) + y * y * y / Scalar(24);
      }
      return std::expm1(y) / y;
    }
  }
  throw std::logic_error("KernelEvaluator: corrupt family tag");
}

long double KernelEvaluator::compute_double_integral() const {
  switch (spec_.family) {
    case KernelFamily::BrownianShift:
      return 4.0L / 3.0L;
    case KernelFamily::Matern: {
      const long double a = alpha_;
      if (a < 0.5L) {
        // Small decay rates cancel catastrophically in the closed forms;
        // switch to the alternating series in alpha. Some coefficients are
        // exactly zero, so run the full factorially-damped loop instead of
        // stopping at the first tiny term.
        long double sum = 0.0L;
        long double apow = 1.0L;   // alpha^{m-2}
        long double mfact = 2.0L;  // m!
        for (int m = 2; m <= 60; ++m) {
          long double c = 0.0L;
          switch (spec_.nu) {
            case MaternOrder::Half: c = 2.0L; break;
            case MaternOrder::ThreeHalves: c = 2.0L * (3.0L - m); break;
            case MaternOrder::FiveHalves:
              c = (2.0L / 3.0L) * (m - 3.0L) * (m - 5.0L);
              break;
          }
          const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
          sum += sign * c * apow / mfact;
          apow *= a;
          mfact *= (m + 1);
        }
        return sum;
      }
      const long double ea = std::exp(-a);
      switch (spec_.nu) {
        case MaternOrder::Half:
          return 2.0L / (a * a) * (a - 1.0L + ea);
        case MaternOrder::ThreeHalves:
          return 2.0L / (a * a) * (2.0L * a - 3.0L + (3.0L + a) * ea);
        case MaternOrder::FiveHalves:
          return 2.0L / (3.0L * a * a) *
                 (8.0L * a - 15.0L + (15.0L + 7.0L * a + a * a) * ea);
      }
      break;
    }
    case KernelFamily::IntegratedBm: {
      if (spec_.fold == 0) return 4.0L / 3.0L;
      const int m = spec_.fold;
      long double sum = 0.0L;
      for (int k = 0; k <= m; ++k) {
        const u128 kfact = factorial_u128(k);
        sum += ratio_ld(1, kfact * kfact * static_cast<unsigned>((k + 1)) *
                               static_cast<unsigned>(k + 1));
      }
      u128 binom_sum = 0;
      for (int i = 0; i <= m + 1; ++i) binom_sum += binomial_u128(m + i, i);
      sum += ratio_ld(binom_sum, factorial_u128(2 * m + 3));
      return sum;
    }
    case KernelFamily::ExpProduct:
      return exp_product_double_integral();
  }
  throw std::logic_error("KernelEvaluator: corrupt family tag");
}

void KernelEvaluator::build_separable() {
  const long double a = alpha_;
  switch (spec_.family) {
    case KernelFamily::BrownianShift:
      separable_.push_back({{1.0L, 1.0L}, {1.0L}});  // (1 + x) * 1
      return;
    case KernelFamily::Matern:
      switch (spec_.nu) {
        case MaternOrder::Half:
          separable_.push_back({{1.0L}, {1.0L}});
          return;
        case MaternOrder::ThreeHalves:
          // 1 + a(y - x) = 1*(1 + a y) + (-a x)*1
          separable_.push_back({{1.0L}, {1.0L, a}});
          separable_.push_back({{0.0L, -a}, {1.0L}});
          return;
        case MaternOrder::FiveHalves:
          // 1 + a(y-x) + a^2 (y-x)^2 / 3, grouped by powers of x.
          separable_.push_back({{1.0L}, {1.0L, a, a * a / 3.0L}});
          separable_.push_back({{0.0L, 1.0L}, {-a, -2.0L * a * a / 3.0L}});
          separable_.push_back({{0.0L, 0.0L, a * a / 3.0L}, {1.0L}});
          return;
      }
      return;
    case KernelFamily::IntegratedBm: {
      if (spec_.fold > 2) return;  // the O(N) path only claims fold <= 2
      if (spec_.fold == 0) {
        separable_.push_back({{1.0L, 1.0L}, {1.0L}});
        return;
      }
      // Expand the x <= y closed form into monomials c x^p y^s, then group
      // by the power of y so each term has a single-monomial r.
      const int m = spec_.fold;
      std::map<int, std::vector<long double>> by_ypow;  // s -> q coefficients
      auto add = [&](int xpow, int ypow, long double c) {
        auto& q = by_ypow[ypow];
        if (static_cast<int>(q.size()) <= xpow) q.resize(xpow + 1, 0.0L);
        q[xpow] += c;
      };
      for (int k = 0; k <= m; ++k) add(k, k, ibm_diag_[k]);
      for (int j = 0; j <= m; ++j) {
        // (y - x)^{m-j} = sum_s binom(m-j, s) y^s (-x)^{m-j-s}
        for (int s = 0; s <= m - j; ++s) {
          const long double sign = ((m - j - s) % 2 == 0) ? 1.0L : -1.0L;
          const long double c = ibm_tail_[j] *
                                static_cast<long double>(binomial_u128(m - j, s)) * sign;
          add(m + j + 1 + (m - j - s), s, c);
        }
      }
      for (const auto& [ypow, qcoeff] : by_ypow) {
        std::vector<long double> r(ypow + 1, 0.0L);
        r[ypow] = 1.0L;
        separable_.push_back({qcoeff, std::move(r)});
      }
      return;
    }
    case KernelFamily::ExpProduct:
      return;  // exp(x y) has no finite polynomial-exponential factorization
  }
}

const std::vector<SeparableTerm>& KernelEvaluator::separable_terms() const {
  if (separable_.empty()) {
    throw std::invalid_argument("kernel " + id() + " has no separable factorization");
  }
  return separable_;
}

double KernelEvaluator::eval(double x, double y) const {
  check_domain(x, "x");
  check_domain(y, "y");
  return static_cast<double>(eval_impl<long double>(x, y));
}

double KernelEvaluator::mean_embedding(double y) const {
  check_domain(y, "y");
  return static_cast<double>(embedding_impl<long double>(y));
}

double KernelEvaluator::double_integral() const {
  return static_cast<double>(double_integral_);
}

long double KernelEvaluator::eval_ld(long double x, long double y) const {
  return eval_impl<long double>(x, y);
}

long double KernelEvaluator::mean_embedding_ld(long double y) const {
  return embedding_impl<long double>(y);
}

Eigen::MatrixXd gram_matrix(const KernelEvaluator& kernel,
                            const Eigen::Ref<const Eigen::VectorXd>& points) {
  const Eigen::Index n = points.size();
  Eigen::MatrixXd g(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      g(i, j) = kernel.eval(points[i], points[j]);
      g(j, i) = g(i, j);
    }
  }
  return g;
}

}  // namespace fareymmd
