#pragma once

#include <vector>

#include "amenlab/algebra.hpp"

namespace amenlab {

struct TensorTerm {
  AlgebraElement left;
  AlgebraElement right;
};

/// Element of a projective tensor product A (x) B held as an explicit list
/// of elementary tensors. The stored decomposition is the norm certificate;
/// equality between tensors is equality of coefficient tensors.
class DecomposedTensor {
 public:
  DecomposedTensor(AlgebraHandle left, AlgebraHandle right, std::vector<TensorTerm> terms = {});

  /// Single elementary tensor a (x) b.
  static DecomposedTensor elementary(const AlgebraElement& a, const AlgebraElement& b);

  const AlgebraHandle& left_algebra() const noexcept { return left_; }
  const AlgebraHandle& right_algebra() const noexcept { return right_; }
  const std::vector<TensorTerm>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  void add_term(AlgebraElement a, AlgebraElement b);

  /// dim(left) x dim(right) array sum_i a_i b_i^T.
  Matrix coefficient_tensor() const;

 private:
  AlgebraHandle left_;
  AlgebraHandle right_;
  std::vector<TensorTerm> terms_;
};

/// Grothendieck constant used by the C(K1) (x) C(K2) norm bound; downstream
/// formulas use c = value / 2.
struct GrothendieckConstant {
  double value = 1.405;
  ScalarField field = ScalarField::kComplex;

  double c() const noexcept { return value / 2.0; }

  /// 1.405 for complex scalars, 1.783 for real scalars.
  static GrothendieckConstant for_field(ScalarField field);
};

/// a . u, term by term.
DecomposedTensor act_left(const AlgebraElement& a, const DecomposedTensor& u);
/// u . a, term by term.
DecomposedTensor act_right(const DecomposedTensor& u, const AlgebraElement& a);
/// pi(sum a_i (x) b_i) = sum a_i b_i. Requires equal factor algebras.
AlgebraElement product_map(const DecomposedTensor& u);
/// Concatenation of the term lists.
DecomposedTensor add(const DecomposedTensor& u, const DecomposedTensor& v);
DecomposedTensor scale(Scalar lambda, const DecomposedTensor& u);
/// a . u - u . a, with 2 |terms(u)| terms.
DecomposedTensor commutator(const AlgebraElement& a, const DecomposedTensor& u);

/// Max coefficient-tensor entry of u - v.
double coefficient_distance(const DecomposedTensor& u, const DecomposedTensor& v);
bool tensors_equal(const DecomposedTensor& u, const DecomposedTensor& v, double tol = 1e-12);

/// The shortest (in sum ||a_i|| ||b_i||) of three decompositions of u: the
/// stored one after dropping zero terms and merging terms whose left factors
/// are proportional (a merge's rounding residual r is kept as a term r (x) b),
/// and the two basis collapses sum_i e_i (x) r_i and sum_j c_j (x) e_j of the
/// coefficient tensor. Ties keep the stored decomposition.
DecomposedTensor best_decomposition(const DecomposedTensor& u);
/// Certified upper bound on the projective norm: norm_raw(best_decomposition(u)).
double norm_upper(const DecomposedTensor& u);

/// Sum over terms of ||a_i|| ||b_i|| with no cleanup.
double norm_raw(const DecomposedTensor& u);

/// Both factor algebras must be sup algebras. Returns
/// (k/2) (|| sum |a_i|^2 ||_inf + || sum |b_i|^2 ||_inf).
double grothendieck_bound(const DecomposedTensor& u, const GrothendieckConstant& k);

/// grothendieck_bound applied to the best rescaling sum (t a_i) (x) (b_i / t),
/// which gives k sqrt(|| sum |a_i|^2 ||_inf || sum |b_i|^2 ||_inf).
double grothendieck_bound_balanced(const DecomposedTensor& u, const GrothendieckConstant& k);

/// T(u, alpha) = sum_{i,j} u_i alpha_j (x) v_i beta_j in C(X,A) (x) C(X,A),
/// where `cxa` is C(X, A) for the points u lives on. The sum runs over
/// best_decomposition of u and alpha, so norm_raw(T) is at most
/// norm_upper(u) norm_upper(alpha) up to rounding.
DecomposedTensor mixed_tensor(const DecomposedTensor& u, const DecomposedTensor& alpha, const AlgebraHandle& cxa);

}  // namespace amenlab
