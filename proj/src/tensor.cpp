#include "amenlab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace amenlab {

namespace {

constexpr double kProportionalTolerance = 1e-13;

// Drops zero terms and merges terms whose left factors are proportional. A
// merge leaves the rounding residual r = a - lambda base, kept as r (x) b.
DecomposedTensor cleaned_decomposition(const DecomposedTensor& u) {
  struct Kept {
    AlgebraElement left;
    Vector right;
    Scalar left_sq;
  };
  std::vector<Kept> kept;
  std::vector<TensorTerm> residuals;
  for (const auto& term : u.terms()) {
    if (term.left.is_zero() || term.right.is_zero()) continue;
    const Vector& a = term.left.coeffs();
    const double a_max = a.cwiseAbs().maxCoeff();
    bool merged = false;
    for (auto& k : kept) {
      const Vector& base = k.left.coeffs();
      const Scalar lambda = base.dot(a) / k.left_sq;
      const Vector r = a - lambda * base;
      if (r.cwiseAbs().maxCoeff() > kProportionalTolerance * a_max) continue;
      k.right += lambda * term.right.coeffs();
      if (!r.isZero(0.0)) residuals.push_back({AlgebraElement(u.left_algebra(), r), term.right});
      merged = true;
      break;
    }
    if (!merged) kept.push_back({term.left, term.right.coeffs(), term.left.coeffs().squaredNorm()});
  }
  DecomposedTensor out(u.left_algebra(), u.right_algebra());
  for (auto& k : kept)
    if (!k.right.isZero(0.0)) out.add_term(k.left, AlgebraElement(u.right_algebra(), std::move(k.right)));
  for (auto& r : residuals) out.add_term(std::move(r.left), std::move(r.right));
  return out;
}

DecomposedTensor row_collapse(const DecomposedTensor& u, const Matrix& coeffs) {
  DecomposedTensor out(u.left_algebra(), u.right_algebra());
  for (Eigen::Index i = 0; i < coeffs.rows(); ++i) {
    const Vector row = coeffs.row(i).transpose();
    if (!row.isZero(0.0))
      out.add_term(basis_element(u.left_algebra(), static_cast<std::size_t>(i)), AlgebraElement(u.right_algebra(), row));
  }
  return out;
}

DecomposedTensor column_collapse(const DecomposedTensor& u, const Matrix& coeffs) {
  DecomposedTensor out(u.left_algebra(), u.right_algebra());
  for (Eigen::Index j = 0; j < coeffs.cols(); ++j) {
    const Vector col = coeffs.col(j);
    if (!col.isZero(0.0))
      out.add_term(AlgebraElement(u.left_algebra(), col), basis_element(u.right_algebra(), static_cast<std::size_t>(j)));
  }
  return out;
}

// Pointwise sum_i |a_i(x)|^2 over one side of a tensor with sup-algebra factors.
Eigen::VectorXd pointwise_square_sum(const DecomposedTensor& u, bool left_side) {
  const auto& algebra = left_side ? u.left_algebra() : u.right_algebra();
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(algebra->dim()));
  for (const auto& term : u.terms()) {
    const Vector& c = left_side ? term.left.coeffs() : term.right.coeffs();
    sums += c.cwiseAbs2();
  }
  return sums;
}

void require_sup_factors(const DecomposedTensor& u, const char* context) {
  if (!u.left_algebra()->is_sup() || !u.right_algebra()->is_sup())
    throw UnsupportedInstance(std::string(context) + " needs sup-algebra factors, got " +
                              u.left_algebra()->descriptor() + " (x) " + u.right_algebra()->descriptor());
}

}  // namespace

DecomposedTensor::DecomposedTensor(AlgebraHandle left, AlgebraHandle right, std::vector<TensorTerm> terms)
    : left_(std::move(left)), right_(std::move(right)), terms_(std::move(terms)) {
  if (!left_ || !right_) throw InvalidArgument("tensor needs both factor algebras");
  for (const auto& t : terms_) {
    require_same_algebra(*left_, *t.left.algebra(), "tensor left factor");
    require_same_algebra(*right_, *t.right.algebra(), "tensor right factor");
  }
}

DecomposedTensor DecomposedTensor::elementary(const AlgebraElement& a, const AlgebraElement& b) {
  return DecomposedTensor(a.algebra(), b.algebra(), {TensorTerm{a, b}});
}

void DecomposedTensor::add_term(AlgebraElement a, AlgebraElement b) {
  require_same_algebra(*left_, *a.algebra(), "tensor left factor");
  require_same_algebra(*right_, *b.algebra(), "tensor right factor");
  terms_.push_back({std::move(a), std::move(b)});
}

Matrix DecomposedTensor::coefficient_tensor() const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(left_->dim()), static_cast<Eigen::Index>(right_->dim()));
  for (const auto& t : terms_) out.noalias() += t.left.coeffs() * t.right.coeffs().transpose();
  return out;
}

GrothendieckConstant GrothendieckConstant::for_field(ScalarField field) {
  return field == ScalarField::kReal ? GrothendieckConstant{1.783, ScalarField::kReal}
                                     : GrothendieckConstant{1.405, ScalarField::kComplex};
}

DecomposedTensor act_left(const AlgebraElement& a, const DecomposedTensor& u) {
  require_same_algebra(*u.left_algebra(), *a.algebra(), "act_left");
  std::vector<TensorTerm> terms;
  terms.reserve(u.size());
  for (const auto& t : u.terms()) terms.push_back({multiply(a, t.left), t.right});
  return DecomposedTensor(u.left_algebra(), u.right_algebra(), std::move(terms));
}

DecomposedTensor act_right(const DecomposedTensor& u, const AlgebraElement& a) {
  require_same_algebra(*u.right_algebra(), *a.algebra(), "act_right");
  std::vector<TensorTerm> terms;
  terms.reserve(u.size());
  for (const auto& t : u.terms()) terms.push_back({t.left, multiply(t.right, a)});
  return DecomposedTensor(u.left_algebra(), u.right_algebra(), std::move(terms));
}

AlgebraElement product_map(const DecomposedTensor& u) {
  require_same_algebra(*u.left_algebra(), *u.right_algebra(), "product_map");
  Vector out = Vector::Zero(static_cast<Eigen::Index>(u.left_algebra()->dim()));
  for (const auto& t : u.terms()) out += u.left_algebra()->multiply(t.left.coeffs(), t.right.coeffs());
  return {u.left_algebra(), std::move(out)};
}

DecomposedTensor add(const DecomposedTensor& u, const DecomposedTensor& v) {
  require_same_algebra(*u.left_algebra(), *v.left_algebra(), "add");
  require_same_algebra(*u.right_algebra(), *v.right_algebra(), "add");
  std::vector<TensorTerm> terms = u.terms();
  terms.insert(terms.end(), v.terms().begin(), v.terms().end());
  return DecomposedTensor(u.left_algebra(), u.right_algebra(), std::move(terms));
}

DecomposedTensor scale(Scalar lambda, const DecomposedTensor& u) {
  std::vector<TensorTerm> terms;
  terms.reserve(u.size());
  for (const auto& t : u.terms()) terms.push_back({lambda * t.left, t.right});
  return DecomposedTensor(u.left_algebra(), u.right_algebra(), std::move(terms));
}

DecomposedTensor commutator(const AlgebraElement& a, const DecomposedTensor& u) {
  return add(act_left(a, u), scale(-1.0, act_right(u, a)));
}

double coefficient_distance(const DecomposedTensor& u, const DecomposedTensor& v) {
  require_same_algebra(*u.left_algebra(), *v.left_algebra(), "coefficient_distance");
  require_same_algebra(*u.right_algebra(), *v.right_algebra(), "coefficient_distance");
  const Matrix diff = u.coefficient_tensor() - v.coefficient_tensor();
  return diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
}

bool tensors_equal(const DecomposedTensor& u, const DecomposedTensor& v, double tol) {
  return coefficient_distance(u, v) <= tol;
}

double norm_raw(const DecomposedTensor& u) {
  double total = 0.0;
  for (const auto& t : u.terms()) total += t.left.norm() * t.right.norm();
  return total;
}

DecomposedTensor best_decomposition(const DecomposedTensor& u) {
  DecomposedTensor best = cleaned_decomposition(u);
  if (best.size() == 0) return best;
  double best_norm = norm_raw(best);
  const Matrix coeffs = u.coefficient_tensor();
  for (auto candidate : {row_collapse(u, coeffs), column_collapse(u, coeffs)}) {
    const double n = norm_raw(candidate);
    if (n < best_norm) {
      best_norm = n;
      best = std::move(candidate);
    }
  }
  return best;
}

double norm_upper(const DecomposedTensor& u) { return norm_raw(best_decomposition(u)); }

double grothendieck_bound(const DecomposedTensor& u, const GrothendieckConstant& k) {
  require_sup_factors(u, "grothendieck_bound");
  if (u.terms().empty()) return 0.0;
  const double left = pointwise_square_sum(u, true).maxCoeff();
  const double right = pointwise_square_sum(u, false).maxCoeff();
  return k.c() * (left + right);
}

double grothendieck_bound_balanced(const DecomposedTensor& u, const GrothendieckConstant& k) {
  require_sup_factors(u, "grothendieck_bound_balanced");
  if (u.terms().empty()) return 0.0;
  const double left = pointwise_square_sum(u, true).maxCoeff();
  const double right = pointwise_square_sum(u, false).maxCoeff();
  return 2.0 * k.c() * std::sqrt(left * right);
}

DecomposedTensor mixed_tensor(const DecomposedTensor& u, const DecomposedTensor& alpha, const AlgebraHandle& cxa) {
  const auto& vv = cxa->vector_valued();
  const std::size_t points = vv.space->size();
  for (const auto& side : {u.left_algebra(), u.right_algebra()})
    if (!side->is_sup() || side->dim() != points)
      throw AlgebraMismatch("mixed_tensor: " + side->descriptor() + " is not C(X) for the target " +
                            cxa->descriptor());
  require_same_algebra(*vv.base, *alpha.left_algebra(), "mixed_tensor");
  require_same_algebra(*vv.base, *alpha.right_algebra(), "mixed_tensor");
  const DecomposedTensor u_best = best_decomposition(u);
  const DecomposedTensor alpha_best = best_decomposition(alpha);
  std::vector<TensorTerm> terms;
  terms.reserve(u_best.size() * alpha_best.size());
  for (const auto& ut : u_best.terms())
    for (const auto& at : alpha_best.terms())
      terms.push_back({scalar_times(cxa, ut.left, at.left), scalar_times(cxa, ut.right, at.right)});
  return DecomposedTensor(cxa, cxa, std::move(terms));
}

}  // namespace amenlab
