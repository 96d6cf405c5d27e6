#pragma once

#include <optional>
#include <vector>

#include "amenlab/algebra.hpp"

namespace amenlab {

/// Relative singular-value threshold for rank decisions.
inline constexpr double kRankThreshold = 1e-9;

/// The dual bimodule A*, in the dual basis e_k^*:
///   (a.phi)(b) = phi(ba),  (phi.a)(b) = phi(ab).
/// left_action[i] and right_action[i] are the matrices of phi -> e_i.phi and
/// phi -> phi.e_i acting on coordinate vectors of phi.
struct DualBimodule {
  AlgebraHandle algebra;
  std::vector<Matrix> left_action;
  std::vector<Matrix> right_action;

  Vector act_left(const Vector& a, const Vector& phi) const;
  Vector act_right(const Vector& phi, const Vector& a) const;
};

DualBimodule dual_bimodule(const AlgebraHandle& algebra);

/// All linear maps D : A -> A* with D(ab) = a.D(b) + D(a).b. A map is a
/// dim x dim matrix whose column j holds D(e_j) in the dual basis.
struct DerivationSpace {
  AlgebraHandle algebra;
  std::vector<Matrix> basis;
  std::size_t dim = 0;
  double threshold = kRankThreshold;
};

DerivationSpace derivation_space(const AlgebraHandle& algebra);

/// Largest |D(e_i e_j) - e_i.D(e_j) - D(e_i).e_j| coefficient.
double leibniz_defect(const AlgebraHandle& algebra, const Matrix& derivation);

/// Basis of the inner derivations phi -> (a -> a.phi - phi.a).
std::vector<Matrix> inner_derivations(const AlgebraHandle& algebra);

/// Dimension of the span of a list of equally shaped matrices.
std::size_t span_dimension(const std::vector<Matrix>& maps, double threshold = kRankThreshold);

/// Commutative A is weakly amenable iff it has no nonzero derivation into
/// A*. Throws InvalidArgument for non-commutative A.
bool weakly_amenable_commutative(const AlgebraHandle& algebra);

/// D~(f) = D(f 1_A) for a derivation D on C(X, A) with unital A. Returns a
/// dim(C(X,A)) x |X| matrix whose column x holds D~(delta_x).
Matrix tilde_extension(const Matrix& derivation, const AlgebraHandle& cxa);

/// Largest defect of D~(fg) = f.D~(g) + D~(f).g on basis pairs of C(X),
/// with C(X) acting on C(X, A)* through f -> f 1_A.
double tilde_leibniz_defect(const Matrix& tilde, const AlgebraHandle& cxa);

/// Derivation of C(X, A) obtained by composing a derivation of A with
/// evaluation at x0: D(f) = D_A(f(x0)) placed in the x0 block.
Matrix lift_derivation_at_point(const Matrix& base_derivation, const AlgebraHandle& cxa, std::size_t x0);

struct TransferReport {
  std::size_t base_dim = 0;
  std::size_t lifted_dim = 0;
  bool base_weakly_amenable = false;
  bool lifted_weakly_amenable = false;
  /// Nonzero derivation of C(X, A) built from a witness of A, when one exists.
  std::optional<Matrix> lifted_witness;
  double witness_leibniz_defect = 0.0;
  /// dim(A) = 0 implies dim(C(X,A)) = 0, and dim(A) > 0 comes with a
  /// nonzero lifted witness.
  bool consistent = false;
};

/// Computes derivation-space dimensions for A and C(X, A). Requires A
/// commutative and unital.
TransferReport weak_amenability_transfer_check(const SpaceHandle& space, const AlgebraHandle& algebra);

/// Scales a map so its largest-modulus entry is exactly 1.
Matrix normalize_witness(const Matrix& map);

}  // namespace amenlab
