#include "amenlab/space.hpp"

#include <algorithm>
#include <cmath>

namespace amenlab {

namespace {

// Distance in the value space between f(x) and f(y).
double value_gap(const AlgebraElement& f, std::size_t x, std::size_t y) {
  if (f.algebra()->is_vector_valued()) {
    const auto& base = *f.algebra()->vector_valued().base;
    const auto d = static_cast<Eigen::Index>(base.dim());
    return base.norm(f.coeffs().segment(static_cast<Eigen::Index>(x) * d, d) -
                     f.coeffs().segment(static_cast<Eigen::Index>(y) * d, d));
  }
  return std::abs(f[x] - f[y]);
}

std::size_t points_of(const AlgebraElement& f) {
  if (f.algebra()->is_vector_valued()) return f.algebra()->vector_valued().space->size();
  if (f.algebra()->is_sup()) return f.dim();
  throw AlgebraMismatch("expected a function on X, got an element of " + f.algebra()->descriptor());
}

bool tent_partition_exists(const Cover& cover) {
  const auto& space = *cover.space;
  for (std::size_t x = 0; x < space.size(); ++x) {
    bool interior = false;
    for (std::size_t i = 0; i < cover.size() && !interior; ++i)
      interior = space.distance(x, cover.centers[i]) < cover.radius;
    if (!interior) return false;
  }
  return true;
}

}  // namespace

std::vector<std::string> Cover::center_labels() const {
  std::vector<std::string> out;
  out.reserve(centers.size());
  for (auto c : centers) out.push_back(space->labels()[c]);
  return out;
}

Cover ball_cover(const SpaceHandle& space, double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("cover radius must be positive");
  Cover cover{space, {}, {}, radius};
  std::vector<bool> covered(space->size(), false);
  for (std::size_t p = 0; p < space->size(); ++p) {
    if (covered[p]) continue;
    std::vector<std::size_t> cell;
    for (std::size_t q = 0; q < space->size(); ++q)
      if (space->distance(p, q) <= radius) {
        cell.push_back(q);
        covered[q] = true;
      }
    cover.centers.push_back(p);
    cover.cells.push_back(std::move(cell));
  }
  return cover;
}

double oscillation(const AlgebraElement& f, const Cover& cover) {
  if (points_of(f) != cover.space->size()) throw AlgebraMismatch("oscillation: function and cover live on different spaces");
  double worst = 0.0;
  for (const auto& cell : cover.cells)
    for (std::size_t i = 0; i < cell.size(); ++i)
      for (std::size_t j = i + 1; j < cell.size(); ++j) worst = std::max(worst, value_gap(f, cell[i], cell[j]));
  return worst;
}

PartitionOfUnity partition_of_unity(const Cover& cover, ScalarField field) {
  const auto& space = *cover.space;
  const std::size_t n = space.size();
  RealMatrix bumps = RealMatrix::Zero(static_cast<Eigen::Index>(cover.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < cover.size(); ++i)
    for (auto x : cover.cells[i])
      bumps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x)) =
          std::max(0.0, 1.0 - space.distance(x, cover.centers[i]) / cover.radius);

  auto scalars = make_sup_algebra(n, field);
  PartitionOfUnity pou{cover, scalars, {}};
  const Eigen::VectorXd totals = bumps.colwise().sum().transpose();
  for (std::size_t x = 0; x < n; ++x)
    if (!(totals[static_cast<Eigen::Index>(x)] > 0.0))
      throw ConstructionError("partition of unity: point " + space.labels()[x] +
                              " is not interior to any cell of radius " + std::to_string(cover.radius));
  for (std::size_t i = 0; i < cover.size(); ++i) {
    Vector h(static_cast<Eigen::Index>(n));
    for (std::size_t x = 0; x < n; ++x)
      h[static_cast<Eigen::Index>(x)] =
          bumps(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(x)) / totals[static_cast<Eigen::Index>(x)];
    pou.functions.emplace_back(scalars, std::move(h));
  }
  return pou;
}

DecomposedTensor sqrt_diagonal_u(const PartitionOfUnity& pou) {
  DecomposedTensor u(pou.scalars, pou.scalars);
  for (const auto& h : pou.functions) {
    Vector root(h.coeffs().size());
    for (Eigen::Index x = 0; x < root.size(); ++x) {
      const double v = h.coeffs()[x].real();
      if (v < 0.0) throw ConstructionError("partition of unity has a negative value");
      root[x] = std::sqrt(v);
    }
    AlgebraElement r(pou.scalars, std::move(root));
    u.add_term(r, r);
  }
  return u;
}

double commutator_bound_u(const AlgebraElement& f, const PartitionOfUnity& pou, const DecomposedTensor& u,
                          const GrothendieckConstant& k) {
  require_same_algebra(*f.algebra(), *pou.scalars, "commutator_bound_u");
  if (u.size() != pou.size()) throw InvalidArgument("commutator_bound_u: u does not match the partition of unity");
  DecomposedTensor left_sum(pou.scalars, pou.scalars);
  DecomposedTensor right_sum(pou.scalars, pou.scalars);
  const Vector ones = Vector::Ones(f.coeffs().size());
  for (std::size_t i = 0; i < pou.size(); ++i) {
    const auto& term = u.terms()[i];
    const Vector& h = pou.functions[i].coeffs();
    for (Eigen::Index x = 0; x < h.size(); ++x)
      if (std::abs(term.left.coeffs()[x] * term.left.coeffs()[x] - h[x]) > 1e-12 ||
          term.left.coeffs()[x] != term.right.coeffs()[x])
        throw InvalidArgument("commutator_bound_u: u does not match the partition of unity");
    const Scalar at_center = f[pou.cover.centers[i]];
    const AlgebraElement shifted(pou.scalars, (f.coeffs() - at_center * ones).cwiseProduct(term.left.coeffs()));
    left_sum.add_term(shifted, term.right);
    right_sum.add_term(term.left, shifted);
  }
  return grothendieck_bound_balanced(left_sum, k) + grothendieck_bound_balanced(right_sum, k);
}

ElementaryFunction elementary_approximation(const AlgebraElement& a, const Cover& cover) {
  const auto& vv = a.algebra()->vector_valued();
  if (vv.space->size() != cover.space->size() || !(*vv.space == *cover.space))
    throw AlgebraMismatch("elementary_approximation: function and cover live on different spaces");
  const auto pou = partition_of_unity(cover, a.algebra()->field());
  ElementaryFunction out;
  out.reserve(pou.size());
  for (std::size_t k = 0; k < pou.size(); ++k)
    out.push_back({pou.functions[k], evaluation_hom(a, cover.centers[k])});
  return out;
}

AlgebraElement reconstruct(const AlgebraHandle& cxa, const ElementaryFunction& terms) {
  AlgebraElement total = zero(cxa);
  for (const auto& t : terms) total = total + scalar_times(cxa, t.f, t.a);
  return total;
}

Cover cover_for_oscillation(const SpaceHandle& space, const std::vector<AlgebraElement>& functions, double target) {
  if (!(target > 0.0)) throw PreconditionViolation("oscillation target", "oscillation target must be positive");
  const double diameter = space->diameter();
  const double floor = space->min_positive_distance();
  double radius = diameter > 0.0 ? 2.0 * diameter : 1.0;
  for (;;) {
    Cover cover = ball_cover(space, radius);
    const bool singletons = cover.size() == space->size();
    bool ok = tent_partition_exists(cover);
    for (std::size_t i = 0; i < functions.size() && ok; ++i) ok = oscillation(functions[i], cover) < target;
    if (ok) return cover;
    if (singletons && radius < floor) return cover;
    radius /= 2.0;
  }
}

}  // namespace amenlab
