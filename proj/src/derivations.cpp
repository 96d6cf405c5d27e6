#include "amenlab/derivations.hpp"

#include <algorithm>
#include <cmath>

namespace amenlab {

namespace {

constexpr double kWitnessLeibnizTolerance = 1e-10;

// Right singular vectors of `system` whose singular values fall below
// threshold * (largest singular value).
std::vector<Vector> null_vectors(const Matrix& system, double threshold) {
  std::vector<Vector> out;
  const Eigen::Index cols = system.cols();
  if (system.rows() == 0 || system.isZero(0.0)) {
    for (Eigen::Index j = 0; j < cols; ++j) out.push_back(Vector::Unit(cols, j));
    return out;
  }
  Eigen::BDCSVD<Matrix> svd(system, Eigen::ComputeFullV);
  if (svd.info() != Eigen::Success) throw NumericalFailure("nullspace SVD did not converge");
  const auto& sigma = svd.singularValues();
  const double cutoff = threshold * sigma[0];
  for (Eigen::Index j = 0; j < cols; ++j) {
    const double s = j < sigma.size() ? sigma[j] : 0.0;
    if (s <= cutoff) out.push_back(svd.matrixV().col(j));
  }
  return out;
}

std::size_t rank_of(const Matrix& m, double threshold) {
  if (m.size() == 0 || m.isZero(0.0)) return 0;
  Eigen::BDCSVD<Matrix> svd(m);
  if (svd.info() != Eigen::Success) throw NumericalFailure("rank SVD did not converge");
  const auto& sigma = svd.singularValues();
  return static_cast<std::size_t>((sigma.array() > threshold * sigma[0]).count());
}

Matrix reshape_columns(const Vector& v, Eigen::Index d) {
  Matrix m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) m.col(j) = v.segment(j * d, d);
  return m;
}

Vector flatten(const Matrix& m) {
  Vector v(m.size());
  for (Eigen::Index j = 0; j < m.cols(); ++j) v.segment(j * m.rows(), m.rows()) = m.col(j);
  return v;
}

Vector embed_scalar(const AlgebraHandle& cxa, std::size_t x) {
  const auto& vv = cxa->vector_valued();
  const auto& one = vv.base->unit();
  if (!one) throw InvalidArgument("tilde extension needs a unital base algebra");
  const auto d = static_cast<Eigen::Index>(vv.base->dim());
  Vector v = Vector::Zero(static_cast<Eigen::Index>(cxa->dim()));
  v.segment(static_cast<Eigen::Index>(x) * d, d) = *one;
  return v;
}

}  // namespace

Vector DualBimodule::act_left(const Vector& a, const Vector& phi) const {
  Vector out = Vector::Zero(phi.size());
  for (std::size_t i = 0; i < left_action.size(); ++i)
    if (a[static_cast<Eigen::Index>(i)] != Scalar(0.0)) out += a[static_cast<Eigen::Index>(i)] * (left_action[i] * phi);
  return out;
}

Vector DualBimodule::act_right(const Vector& phi, const Vector& a) const {
  Vector out = Vector::Zero(phi.size());
  for (std::size_t i = 0; i < right_action.size(); ++i)
    if (a[static_cast<Eigen::Index>(i)] != Scalar(0.0))
      out += a[static_cast<Eigen::Index>(i)] * (right_action[i] * phi);
  return out;
}

DualBimodule dual_bimodule(const AlgebraHandle& algebra) {
  const std::size_t d = algebra->dim();
  const auto n = static_cast<Eigen::Index>(d);
  DualBimodule out{algebra, {}, {}};
  out.left_action.assign(d, Matrix::Zero(n, n));
  out.right_action.assign(d, Matrix::Zero(n, n));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t l = 0; l < d; ++l)
      for (std::size_t m = 0; m < d; ++m) {
        // (e_i.phi)(e_l) = phi(e_l e_i),  (phi.e_i)(e_l) = phi(e_i e_l)
        out.left_action[i](static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) =
            algebra->structure_constant(l, i, m);
        out.right_action[i](static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(m)) =
            algebra->structure_constant(i, l, m);
      }
  return out;
}

DerivationSpace derivation_space(const AlgebraHandle& algebra) {
  const std::size_t d = algebra->dim();
  const auto n = static_cast<Eigen::Index>(d);
  const DualBimodule dual = dual_bimodule(algebra);
  // Unknown D(l, m) sits at column m * d + l.
  Matrix system = Matrix::Zero(n * n * n, n * n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t l = 0; l < d; ++l) {
        const Eigen::Index row = (static_cast<Eigen::Index>(i) * n + static_cast<Eigen::Index>(j)) * n +
                                 static_cast<Eigen::Index>(l);
        for (std::size_t m = 0; m < d; ++m) {
          const auto mi = static_cast<Eigen::Index>(m);
          const auto li = static_cast<Eigen::Index>(l);
          // D(e_i e_j)(e_l)
          system(row, mi * n + li) += algebra->structure_constant(i, j, m);
          // - (e_i . D(e_j))(e_l)
          system(row, static_cast<Eigen::Index>(j) * n + mi) -= dual.left_action[i](li, mi);
          // - (D(e_i) . e_j)(e_l)
          system(row, static_cast<Eigen::Index>(i) * n + mi) -= dual.right_action[j](li, mi);
        }
      }
  DerivationSpace out{algebra, {}, 0, kRankThreshold};
  for (const auto& v : null_vectors(system, kRankThreshold)) out.basis.push_back(reshape_columns(v, n));
  out.dim = out.basis.size();
  return out;
}

double leibniz_defect(const AlgebraHandle& algebra, const Matrix& derivation) {
  const std::size_t d = algebra->dim();
  const DualBimodule dual = dual_bimodule(algebra);
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const Vector ei = basis_element(algebra, i).coeffs();
      const Vector ej = basis_element(algebra, j).coeffs();
      const Vector lhs = derivation * algebra->multiply(ei, ej);
      const Vector rhs = dual.act_left(ei, derivation * ej) + dual.act_right(derivation * ei, ej);
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

std::vector<Matrix> inner_derivations(const AlgebraHandle& algebra) {
  const std::size_t d = algebra->dim();
  const auto n = static_cast<Eigen::Index>(d);
  const DualBimodule dual = dual_bimodule(algebra);
  std::vector<Matrix> out;
  for (std::size_t k = 0; k < d; ++k) {
    const Vector phi = Vector::Unit(n, static_cast<Eigen::Index>(k));
    Matrix map(n, n);
    for (std::size_t j = 0; j < d; ++j)
      map.col(static_cast<Eigen::Index>(j)) = dual.left_action[j] * phi - dual.right_action[j] * phi;
    out.push_back(std::move(map));
  }
  return out;
}

std::size_t span_dimension(const std::vector<Matrix>& maps, double threshold) {
  if (maps.empty()) return 0;
  Matrix stacked(maps.front().size(), static_cast<Eigen::Index>(maps.size()));
  for (std::size_t i = 0; i < maps.size(); ++i) stacked.col(static_cast<Eigen::Index>(i)) = flatten(maps[i]);
  return rank_of(stacked, threshold);
}

bool weakly_amenable_commutative(const AlgebraHandle& algebra) {
  if (!algebra->is_commutative())
    throw InvalidArgument("weakly_amenable_commutative needs a commutative algebra, got " + algebra->descriptor());
  return derivation_space(algebra).dim == 0;
}

Matrix tilde_extension(const Matrix& derivation, const AlgebraHandle& cxa) {
  const std::size_t points = cxa->vector_valued().space->size();
  if (derivation.rows() != static_cast<Eigen::Index>(cxa->dim()) || derivation.cols() != derivation.rows())
    throw InvalidArgument("derivation shape does not match C(X, A)");
  Matrix out(derivation.rows(), static_cast<Eigen::Index>(points));
  for (std::size_t x = 0; x < points; ++x) out.col(static_cast<Eigen::Index>(x)) = derivation * embed_scalar(cxa, x);
  return out;
}

double tilde_leibniz_defect(const Matrix& tilde, const AlgebraHandle& cxa) {
  const std::size_t points = cxa->vector_valued().space->size();
  const DualBimodule dual = dual_bimodule(cxa);
  double worst = 0.0;
  for (std::size_t x = 0; x < points; ++x)
    for (std::size_t y = 0; y < points; ++y) {
      // delta_x delta_y = [x == y] delta_x
      const Vector lhs = x == y ? Vector(tilde.col(static_cast<Eigen::Index>(x)))
                                : Vector(Vector::Zero(tilde.rows()));
      const Vector rhs = dual.act_left(embed_scalar(cxa, x), tilde.col(static_cast<Eigen::Index>(y))) +
                         dual.act_right(tilde.col(static_cast<Eigen::Index>(x)), embed_scalar(cxa, y));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
  return worst;
}

Matrix lift_derivation_at_point(const Matrix& base_derivation, const AlgebraHandle& cxa, std::size_t x0) {
  const auto& vv = cxa->vector_valued();
  if (x0 >= vv.space->size()) throw InvalidArgument("evaluation point out of range");
  const auto d = static_cast<Eigen::Index>(vv.base->dim());
  if (base_derivation.rows() != d || base_derivation.cols() != d)
    throw InvalidArgument("base derivation shape does not match A");
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(cxa->dim()), static_cast<Eigen::Index>(cxa->dim()));
  out.block(static_cast<Eigen::Index>(x0) * d, static_cast<Eigen::Index>(x0) * d, d, d) = base_derivation;
  return out;
}

TransferReport weak_amenability_transfer_check(const SpaceHandle& space, const AlgebraHandle& algebra) {
  if (!algebra->is_commutative())
    throw InvalidArgument("transfer check needs a commutative algebra, got " + algebra->descriptor());
  if (!algebra->is_unital()) throw InvalidArgument("transfer check needs a unital algebra");
  const AlgebraHandle cxa = make_vector_valued(space, algebra);
  const DerivationSpace base = derivation_space(algebra);
  const DerivationSpace lifted = derivation_space(cxa);

  TransferReport report;
  report.base_dim = base.dim;
  report.lifted_dim = lifted.dim;
  report.base_weakly_amenable = base.dim == 0;
  report.lifted_weakly_amenable = lifted.dim == 0;
  if (base.dim == 0) {
    report.consistent = lifted.dim == 0;
    return report;
  }
  Matrix witness = lift_derivation_at_point(normalize_witness(base.basis.front()), cxa, 0);
  report.witness_leibniz_defect = leibniz_defect(cxa, witness);
  const bool nonzero = witness.cwiseAbs().maxCoeff() > 0.0;
  report.lifted_witness = std::move(witness);
  report.consistent = lifted.dim >= 1 && nonzero && report.witness_leibniz_defect <= kWitnessLeibnizTolerance;
  return report;
}

Matrix normalize_witness(const Matrix& map) {
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  const double largest = map.cwiseAbs().maxCoeff(&r, &c);
  if (largest == 0.0) return map;
  Matrix out = map / map(r, c);
  // Entries that are pure rounding noise relative to the pivot are dropped.
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (std::abs(out.data()[i]) < 1e-14) out.data()[i] = 0.0;
  return out;
}

}  // namespace amenlab
