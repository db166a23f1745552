#pragma once

// Kernel families on [0,1] with closed-form pointwise values, uniform-measure
// mean embeddings int_0^1 K(x,y) dx and double integrals. The derivations of
// the closed forms live in docs/kernel-integrals.md; every formula is gated
// by the quadrature-oracle tests.

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace fareymmd {

enum class KernelFamily { BrownianShift, Matern, IntegratedBm, ExpProduct };

// Half-integer Matern smoothness orders; the value is 2*nu. These are the
// only supported orders (general nu would need Bessel K_nu).
enum class MaternOrder : int { Half = 1, ThreeHalves = 3, FiveHalves = 5 };

inline constexpr int kMaxIbmFold = 10;

struct KernelSpec {
  KernelFamily family{KernelFamily::BrownianShift};
  MaternOrder nu{MaternOrder::Half};  // Matern only
  double lambda{1.0};                 // Matern correlation length, > 0
  int fold{0};                        // IntegratedBm only, in [0, kMaxIbmFold]

  static KernelSpec brownian();
  // Default lambda makes sqrt(2 nu)/lambda = 1: lambda = 1, sqrt(3), sqrt(5).
  static KernelSpec matern(MaternOrder nu);
  static KernelSpec matern(MaternOrder nu, double lambda);
  static KernelSpec integrated_bm(int fold);
  static KernelSpec exp_product();

  // CLI/CSV identifiers: brownian, matern12, matern32, matern52, ibm<m>,
  // expxy. Lambda is carried separately, never inside the identifier.
  std::string id() const;
  bool has_lambda() const { return family == KernelFamily::Matern; }

  // Parses "<id>" or "<id>:<lambda>" (the lambda suffix is Matern-only).
  static KernelSpec parse(const std::string& text);
};

// One term q(x) r(y) exp(-alpha (y - x)) of the x <= y factorization used by
// the O(N) kernel summation. Coefficients are ascending powers.
struct SeparableTerm {
  std::vector<long double> q;
  std::vector<long double> r;
};

class KernelEvaluator {
 public:
  explicit KernelEvaluator(const KernelSpec& spec);

  const KernelSpec& spec() const { return spec_; }
  std::string id() const { return spec_.id(); }

  // Pointwise value; arguments must lie in [0,1].
  double eval(double x, double y) const;
  // int_0^1 K(x,y) dx.
  double mean_embedding(double y) const;
  // int_0^1 int_0^1 K(x,y) dx dy.
  double double_integral() const;

  // Extended-precision paths used by the MMD accumulations. Domain checks are
  // the caller's job here.
  long double eval_ld(long double x, long double y) const;
  long double mean_embedding_ld(long double y) const;
  long double double_integral_ld() const { return double_integral_; }

  // x <= y factorization; available for brownian, matern and ibm with
  // fold <= 2.
  bool supports_separable() const { return !separable_.empty(); }
  long double separable_alpha() const { return alpha_; }
  const std::vector<SeparableTerm>& separable_terms() const;

 private:
  KernelSpec spec_;
  long double alpha_{0.0L};  // Matern decay rate sqrt(2 nu)/lambda
  long double double_integral_{0.0L};
  // IntegratedBm closed-form coefficients, built once from exact integer
  // ratios (see kernels.cpp).
  std::vector<long double> ibm_diag_;        // (x y)^k coefficients
  std::vector<long double> ibm_tail_;        // x^{m+j+1} (y-x)^{m-j} coefficients
  std::vector<long double> ibm_embed_main_;  // y^k coefficients
  std::vector<long double> ibm_embed_tail_;  // y^{m+i+1} (1-y)^{m+1-i} coefficients
  std::vector<SeparableTerm> separable_;

  template <typename Scalar>
  Scalar eval_impl(Scalar x, Scalar y) const;
  template <typename Scalar>
  Scalar embedding_impl(Scalar y) const;
  void build_ibm_tables();
  void build_separable();
  long double compute_double_integral() const;
};

// Dense kernel Gram matrix K(x_i, x_j).
Eigen::MatrixXd gram_matrix(const KernelEvaluator& kernel,
                            const Eigen::Ref<const Eigen::VectorXd>& points);

}  // namespace fareymmd
