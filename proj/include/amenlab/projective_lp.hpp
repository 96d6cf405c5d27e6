#pragma once

#include <cstddef>

#include "amenlab/tensor.hpp"

namespace amenlab {

/// Dense tableau simplex for  max c^T x  s.t.  A x <= b, x >= 0  with b >= 0,
/// so the origin is a feasible starting vertex. Bland's rule prevents cycling.
class DenseSimplex {
 public:
  struct Result {
    Eigen::VectorXd x;
    double objective = 0.0;
    std::size_t pivots = 0;
  };

  /// Throws UnsupportedInstance if the problem is unbounded and
  /// NumericalFailure if the pivot budget is exhausted.
  static Result maximize(const RealMatrix& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                         std::size_t max_pivots = 200000);
};

enum class LpStrategy {
  /// Add the most violated sign constraint until none is violated, solved as
  /// warm-started column generation on the decomposition side.
  kCuttingPlane,
  /// Enumerate every sign constraint up front (small instances only).
  kFullEnumeration,
};

struct LpNormResult {
  /// <M, u> / max_{s,t} |s^T M t| for the optimal form M: an exact lower bound
  /// that agrees with the LP optimum to solver precision.
  double value = 0.0;
  /// Optimum of the LP actually solved: the decomposition length sum |lambda_k|
  /// for cutting planes, the dual optimum for full enumeration. Either way it
  /// is >= the exact norm up to rounding.
  double relaxation_value = 0.0;
  /// Bilinear form attaining the value, scaled so max |s^T M t| = 1.
  RealMatrix witness;
  std::size_t lp_solves = 0;
};

/// Largest number of rows plus columns accepted by norm_exact_lp.
inline constexpr std::size_t kLpDimensionBudget = 24;

/// Exact projective norm on real l^inf_m (x) l^inf_n,
///   ||u||_p = max <M, u>  s.t. |s^T M t| <= 1 for all s, t in {+1, -1}.
/// Requires real scalars, sup-algebra factors and m + n <= 24.
LpNormResult norm_exact_lp_detailed(const DecomposedTensor& u, LpStrategy strategy = LpStrategy::kCuttingPlane);
double norm_exact_lp(const DecomposedTensor& u, LpStrategy strategy = LpStrategy::kCuttingPlane);

/// max over sign vectors of |s^T M t|, i.e. the injective norm of M on
/// l^1_m (x) l^1_n. Enumerates the smaller side.
double sign_form_norm(const RealMatrix& m);

}  // namespace amenlab
