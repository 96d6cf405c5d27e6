#pragma once

#include <vector>

#include "amenlab/algebra.hpp"
#include "amenlab/metric_space.hpp"
#include "amenlab/tensor.hpp"

namespace amenlab {

/// Finite cover of a space by closed balls. cells[i] lists the points of the
/// ball around centers[i] (in increasing index order).
struct Cover {
  SpaceHandle space;
  std::vector<std::vector<std::size_t>> cells;
  std::vector<std::size_t> centers;
  double radius = 0.0;

  std::size_t size() const noexcept { return cells.size(); }
  std::vector<std::string> center_labels() const;
};

/// Tent-bump partition of unity subordinate to a cover: functions[i] is h_i
/// in C(X), supported in cells[i], 0 <= h_i <= 1, sum_i h_i = 1.
struct PartitionOfUnity {
  Cover cover;
  AlgebraHandle scalars;
  std::vector<AlgebraElement> functions;

  std::size_t size() const noexcept { return functions.size(); }
};

/// One term f_k a_k of an elementary function in C(X, A).
struct ElementaryTerm {
  AlgebraElement f;
  AlgebraElement a;
};
using ElementaryFunction = std::vector<ElementaryTerm>;

/// Greedy cover: scan points in index order, open a closed ball of the given
/// radius around the first point not yet covered.
Cover ball_cover(const SpaceHandle& space, double radius);

/// Largest |f(x) - f(y)| (base-algebra norm for vector-valued f) over point
/// pairs sharing a cell.
double oscillation(const AlgebraElement& f, const Cover& cover);

/// h_i = g_i / sum_j g_j with g_i(x) = max(0, 1 - d(x, x_i) / radius) on the
/// cell and 0 off it. Throws ConstructionError if some point has sum_j g_j = 0.
PartitionOfUnity partition_of_unity(const Cover& cover, ScalarField field = ScalarField::kComplex);

/// u = sum_i sqrt(h_i) (x) sqrt(h_i) in C(X) (x) C(X); pi(u) = 1.
DecomposedTensor sqrt_diagonal_u(const PartitionOfUnity& pou);

/// Certified bound on ||f.u - u.f||_p for u = sqrt_diagonal_u(pou), using
///   f.u - u.f = sum_i (f - f(x_i)) u_i (x) u_i - sum_i u_i (x) (f - f(x_i)) u_i
/// and the balanced Grothendieck bound on each sum. At most 4 c osc(f).
double commutator_bound_u(const AlgebraElement& f, const PartitionOfUnity& pou, const DecomposedTensor& u,
                          const GrothendieckConstant& k);

/// a_eps = sum_k f_k a(x_k) with f_k the partition of unity of the cover.
/// ||a - a_eps||_inf <= oscillation(a, cover).
ElementaryFunction elementary_approximation(const AlgebraElement& a, const Cover& cover);

/// sum_k f_k a_k as an element of C(X, A).
AlgebraElement reconstruct(const AlgebraHandle& cxa, const ElementaryFunction& terms);

/// Shrinks the cover radius (starting above the diameter, halving) until
/// every function has oscillation strictly below `target` and a tent
/// partition of unity exists. Always succeeds on a finite space since
/// singleton cells have zero oscillation.
Cover cover_for_oscillation(const SpaceHandle& space, const std::vector<AlgebraElement>& functions, double target);

}  // namespace amenlab
