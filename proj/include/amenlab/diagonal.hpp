#pragma once

#include <optional>
#include <string>
#include <vector>

#include "amenlab/space.hpp"
#include "amenlab/tensor.hpp"

namespace amenlab {

/// Input to the lifted constructions: tolerance, finite test set F in
/// C(X, A) and a diagonal alpha of A.
struct DiagonalRequest {
  double eps = 0.0;
  std::vector<AlgebraElement> test_set;
  DecomposedTensor base_diagonal;
  /// Caller-supplied bound on ||pi(alpha) b - b||; recorded, and re-checked
  /// against the actual residuals.
  double base_diagonal_residual = 0.0;
  bool central = false;
};

struct ElementResidual {
  /// Certified upper bound on ||a.U - U.a||_p.
  double commutator_bound = 0.0;
  /// Exact ||pi(U) a - a||_inf.
  double pi_residual = 0.0;
};

/// Every internal constant of a construction, so a certificate can be
/// audited against the arithmetic that produced it.
struct Schedule {
  std::string construction;
  std::size_t N = 0;
  double L = 0.0;
  double M = 0.0;
  double c = 0.0;
  /// Radius of the cover behind u.
  double radius = 0.0;
  /// Oscillation target that cover had to meet.
  double oscillation_target = 0.0;
  /// Tolerance for ||a - a_eps|| and the radius of the approximation covers
  /// (case 2 and the central compact construction).
  std::optional<double> approximation_tolerance;
  std::optional<double> approximation_radius;
};

struct DiagonalCertificate {
  double eps = 0.0;
  DecomposedTensor U;
  /// Certified upper bound on ||U||_p.
  double norm_bound = 0.0;
  std::vector<ElementResidual> elements;
  Schedule schedule;
  std::vector<std::string> centers;
  bool passed = false;
  /// Central compact construction only: largest coefficient of
  /// sum_k T(f_k u, a_k alpha - alpha a_k) over the test set.
  std::optional<double> cancellation_block;
};

/// sum_i e_i (x) e_i for the sup algebra C^n.
DecomposedTensor exact_diagonal_sup(const AlgebraHandle& algebra);
/// (1/n) sum_{i,j} e_ij (x) e_ji for M_n.
DecomposedTensor exact_diagonal_matrix(const AlgebraHandle& algebra);
/// (1/|G|) sum_g delta_g (x) delta_{g^-1} for l^1(G).
DecomposedTensor exact_diagonal_group(const AlgebraHandle& algebra);
/// Exact diagonal for any of the three families above, nullopt otherwise.
std::optional<DecomposedTensor> exact_diagonal(const AlgebraHandle& algebra);

/// Lift for test functions of the form a = sum_k f_k a_k (elementary_F[i]
/// is the decomposition of test_set[i]). Throws PreconditionViolation when
/// the base diagonal residuals are too large for eps/(4cNL) or eps/(NL).
DiagonalCertificate lift_case1(const DiagonalRequest& request, const std::vector<ElementaryFunction>& elementary_F,
                               const SpaceHandle& space, const GrothendieckConstant& k);

/// Lift for arbitrary test functions: approximate each a by an elementary
/// a_eps within min(eps/4, eps/(8Mc)), run case 1 at eps/2, and certify the
/// original set.
DiagonalCertificate lift_case2(const DiagonalRequest& request, const SpaceHandle& space,
                               const GrothendieckConstant& k);

/// Compactly approximate diagonal of C(X, A) from an exactly central alpha.
/// Throws PreconditionViolation if alpha is not central on
/// K = {a(x) : a in test_set, x in X} or ||pi(alpha) b - b|| >= eps/2 there.
DiagonalCertificate lift_central_compact(const std::vector<AlgebraElement>& test_set, const DecomposedTensor& alpha,
                                         double eps, const SpaceHandle& space, const GrothendieckConstant& k);

/// Applies evaluation at x0 to both factors of every term.
DecomposedTensor pushforward_diagonal(const DecomposedTensor& U, std::size_t x0);

/// Construction-independent check: commutator_bound = norm_upper(a.U - U.a)
/// and pi_residual = ||pi(U) a - a|| for each a; passes iff all are < eps.
DiagonalCertificate verify_diagonal(const DecomposedTensor& U, const std::vector<AlgebraElement>& test_set,
                                    double eps);

}  // namespace amenlab
