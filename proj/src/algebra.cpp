#include "amenlab/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace amenlab {

namespace {

std::size_t index3(std::size_t dim, std::size_t i, std::size_t j, std::size_t k) { return (i * dim + j) * dim + k; }

std::string field_suffix(ScalarField field) { return std::string(to_string(field)); }

void require_real_coefficients(const FiniteBanachAlgebra& algebra, const Vector& coeffs) {
  if (algebra.field() != ScalarField::kReal) return;
  for (Eigen::Index i = 0; i < coeffs.size(); ++i)
    if (coeffs[i].imag() != 0.0)
      throw InvalidArgument("complex coefficient in real-mode algebra " + algebra.descriptor());
}

}  // namespace

FiniteBanachAlgebra::FiniteBanachAlgebra(std::size_t dim, std::vector<Scalar> mult, NormKind norm,
                                         std::optional<Vector> unit, ScalarField field, std::string descriptor)
    : dim_(dim),
      mult_(std::move(mult)),
      norm_(std::move(norm)),
      unit_(std::move(unit)),
      field_(field),
      descriptor_(std::move(descriptor)) {
  if (dim_ == 0) throw InvalidArgument("algebra dimension must be positive");
  if (mult_.size() != dim_ * dim_ * dim_) throw InvalidArgument("structure constant array has the wrong size");
  if (unit_ && static_cast<std::size_t>(unit_->size()) != dim_) throw InvalidArgument("unit has the wrong length");
  products_.resize(dim_ * dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k) {
        const Scalar c = mult_[index3(dim_, i, j, k)];
        if (c != Scalar(0.0)) products_[i * dim_ + j].emplace_back(k, c);
      }
}

bool FiniteBanachAlgebra::is_commutative() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      for (std::size_t k = 0; k < dim_; ++k)
        if (mult_[index3(dim_, i, j, k)] != mult_[index3(dim_, j, i, k)]) return false;
  return true;
}

bool FiniteBanachAlgebra::same_as(const FiniteBanachAlgebra& other) const noexcept {
  return this == &other || (dim_ == other.dim_ && field_ == other.field_ && descriptor_ == other.descriptor_);
}

const VectorValuedNorm& FiniteBanachAlgebra::vector_valued() const {
  const auto* vv = std::get_if<VectorValuedNorm>(&norm_);
  if (vv == nullptr) throw AlgebraMismatch("expected a vector-valued algebra, got " + descriptor_);
  return *vv;
}

Vector FiniteBanachAlgebra::multiply(const Vector& a, const Vector& b) const {
  Vector out = Vector::Zero(static_cast<Eigen::Index>(dim_));
  for (std::size_t i = 0; i < dim_; ++i) {
    const Scalar ai = a[static_cast<Eigen::Index>(i)];
    if (ai == Scalar(0.0)) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      const Scalar bj = b[static_cast<Eigen::Index>(j)];
      if (bj == Scalar(0.0)) continue;
      const Scalar w = ai * bj;
      for (const auto& [k, c] : products_[i * dim_ + j]) out[static_cast<Eigen::Index>(k)] += w * c;
    }
  }
  return out;
}

double FiniteBanachAlgebra::norm(const Vector& a) const {
  return std::visit(
      [&](const auto& kind) -> double {
        using Kind = std::decay_t<decltype(kind)>;
        if constexpr (std::is_same_v<Kind, SupNorm>) {
          return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
        } else if constexpr (std::is_same_v<Kind, MatrixOperatorNorm>) {
          const auto n = static_cast<Eigen::Index>(kind.n);
          Matrix m(n, n);
          for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) m(r, c) = a[r * n + c];
          if (m.isZero(0.0)) return 0.0;
          Eigen::JacobiSVD<Matrix> svd(m);
          svd.setThreshold(1e-12);
          if (svd.info() != Eigen::Success) throw NumericalFailure("singular value computation did not converge");
          return svd.singularValues()[0];
        } else if constexpr (std::is_same_v<Kind, GroupEll1Norm>) {
          return a.cwiseAbs().sum();
        } else if constexpr (std::is_same_v<Kind, WeightedEll1Norm>) {
          double total = 0.0;
          for (Eigen::Index i = 0; i < a.size(); ++i) total += kind.weights[static_cast<std::size_t>(i)] * std::abs(a[i]);
          return total;
        } else {
          const auto d = static_cast<Eigen::Index>(kind.base->dim());
          double best = 0.0;
          for (std::size_t x = 0; x < kind.space->size(); ++x)
            best = std::max(best, kind.base->norm(a.segment(static_cast<Eigen::Index>(x) * d, d)));
          return best;
        }
      },
      norm_);
}

AlgebraElement::AlgebraElement(AlgebraHandle algebra, Vector coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw InvalidArgument("element needs an algebra");
  if (static_cast<std::size_t>(coeffs_.size()) != algebra_->dim())
    throw InvalidArgument("coefficient vector length does not match algebra dimension");
  require_real_coefficients(*algebra_, coeffs_);
}

void require_same_algebra(const FiniteBanachAlgebra& a, const FiniteBanachAlgebra& b, const char* context) {
  if (!a.same_as(b))
    throw AlgebraMismatch(std::string(context) + ": " + a.descriptor() + " vs " + b.descriptor());
}

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(*a.algebra(), *b.algebra(), "add");
  return {a.algebra(), a.coeffs() + b.coeffs()};
}

AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(*a.algebra(), *b.algebra(), "subtract");
  return {a.algebra(), a.coeffs() - b.coeffs()};
}

AlgebraElement operator*(Scalar s, const AlgebraElement& a) {
  if (a.algebra()->field() == ScalarField::kReal && s.imag() != 0.0)
    throw InvalidArgument("complex scalar in real mode");
  return {a.algebra(), s * a.coeffs()};
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return multiply(a, b); }

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_algebra(*a.algebra(), *b.algebra(), "multiply");
  return {a.algebra(), a.algebra()->multiply(a.coeffs(), b.coeffs())};
}

double norm(const AlgebraElement& a) { return a.norm(); }

AlgebraElement unit(const AlgebraHandle& algebra) {
  if (!algebra->unit()) throw InvalidArgument("algebra " + algebra->descriptor() + " has no unit");
  return {algebra, *algebra->unit()};
}

AlgebraElement zero(const AlgebraHandle& algebra) {
  return {algebra, Vector::Zero(static_cast<Eigen::Index>(algebra->dim()))};
}

AlgebraElement basis_element(const AlgebraHandle& algebra, std::size_t i) {
  if (i >= algebra->dim()) throw InvalidArgument("basis index out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(algebra->dim()));
  v[static_cast<Eigen::Index>(i)] = 1.0;
  return {algebra, std::move(v)};
}

AlgebraElement make_element(const AlgebraHandle& algebra, const std::vector<double>& coeffs) {
  Vector v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[static_cast<Eigen::Index>(i)] = coeffs[i];
  return {algebra, std::move(v)};
}

AlgebraElement make_element(const AlgebraHandle& algebra, std::initializer_list<double> coeffs) {
  return make_element(algebra, std::vector<double>(coeffs));
}

AlgebraElement make_element(const AlgebraHandle& algebra, const std::vector<Scalar>& coeffs) {
  Vector v(static_cast<Eigen::Index>(coeffs.size()));
  for (std::size_t i = 0; i < coeffs.size(); ++i) v[static_cast<Eigen::Index>(i)] = coeffs[i];
  return {algebra, std::move(v)};
}

AlgebraHandle make_sup_algebra(std::size_t n, ScalarField field) {
  if (n == 0) throw InvalidArgument("sup algebra needs n >= 1");
  std::vector<Scalar> mult(n * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) mult[index3(n, i, i, i)] = 1.0;
  Vector one = Vector::Ones(static_cast<Eigen::Index>(n));
  return std::make_shared<const FiniteBanachAlgebra>(n, std::move(mult), SupNorm{}, std::move(one), field,
                                                     "sup(" + std::to_string(n) + "," + field_suffix(field) + ")");
}

AlgebraHandle make_matrix_algebra(std::size_t n, ScalarField field) {
  if (n == 0) throw InvalidArgument("matrix algebra needs n >= 1");
  const std::size_t dim = n * n;
  std::vector<Scalar> mult(dim * dim * dim, 0.0);
  // e_rc e_cd = e_rd
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t d = 0; d < n; ++d) mult[index3(dim, r * n + c, c * n + d, r * n + d)] = 1.0;
  Vector id = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t r = 0; r < n; ++r) id[static_cast<Eigen::Index>(r * n + r)] = 1.0;
  return std::make_shared<const FiniteBanachAlgebra>(dim, std::move(mult), MatrixOperatorNorm{n}, std::move(id),
                                                     field,
                                                     "matrix(" + std::to_string(n) + "," + field_suffix(field) + ")");
}

AlgebraHandle make_group_algebra(const std::vector<std::vector<std::size_t>>& cayley, ScalarField field) {
  const std::size_t n = cayley.size();
  if (n == 0) throw InvalidArgument("group table is empty");
  for (const auto& row : cayley) {
    if (row.size() != n) throw InvalidArgument("group table is not square");
    for (auto v : row)
      if (v >= n) throw InvalidArgument("group table entry out of range");
  }
  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) ok = cayley[e][g] == g && cayley[g][e] == g;
    if (ok) identity = e;
  }
  if (!identity) throw InvalidArgument("group table has no identity element");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (cayley[cayley[a][b]][c] != cayley[a][cayley[b][c]]) {
          std::ostringstream msg;
          msg << "group table is not associative at (" << a << ", " << b << ", " << c << ")";
          throw InvalidArgument(msg.str());
        }
  std::vector<std::size_t> inverse(n);
  for (std::size_t g = 0; g < n; ++g) {
    auto it = std::find(cayley[g].begin(), cayley[g].end(), *identity);
    const auto h = static_cast<std::size_t>(it - cayley[g].begin());
    if (it == cayley[g].end() || cayley[h][g] != *identity)
      throw InvalidArgument("element " + std::to_string(g) + " has no inverse in the group table");
    inverse[g] = h;
  }
  std::vector<Scalar> mult(n * n * n, 0.0);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) mult[index3(n, g, h, cayley[g][h])] = 1.0;
  Vector delta_e = Vector::Zero(static_cast<Eigen::Index>(n));
  delta_e[static_cast<Eigen::Index>(*identity)] = 1.0;
  std::ostringstream desc;
  desc << "group(";
  for (const auto& row : cayley) {
    desc << '[';
    for (auto v : row) desc << v << ' ';
    desc << ']';
  }
  desc << ',' << field_suffix(field) << ')';
  return std::make_shared<const FiniteBanachAlgebra>(n, std::move(mult),
                                                     GroupEll1Norm{cayley, *identity, std::move(inverse)},
                                                     std::move(delta_e), field, desc.str());
}

AlgebraHandle make_truncated_poly_algebra(ScalarField field) {
  std::vector<Scalar> mult(8, 0.0);
  mult[index3(2, 0, 0, 0)] = 1.0;  // 1 * 1 = 1
  mult[index3(2, 0, 1, 1)] = 1.0;  // 1 * x = x
  mult[index3(2, 1, 0, 1)] = 1.0;  // x * 1 = x
  Vector one(2);
  one << 1.0, 0.0;
  return std::make_shared<const FiniteBanachAlgebra>(2, std::move(mult), WeightedEll1Norm{{1.0, 1.0}},
                                                     std::move(one), field, "truncpoly(" + field_suffix(field) + ")");
}

AlgebraHandle make_vector_valued(const SpaceHandle& space, const AlgebraHandle& base) {
  if (!space || space->size() == 0) throw InvalidArgument("vector-valued algebra needs a nonempty space");
  const std::size_t points = space->size();
  const std::size_t d = base->dim();
  const std::size_t dim = points * d;
  std::vector<Scalar> mult(dim * dim * dim, 0.0);
  for (std::size_t x = 0; x < points; ++x)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          mult[index3(dim, x * d + i, x * d + j, x * d + k)] = base->structure_constant(i, j, k);
  std::optional<Vector> one;
  if (base->unit()) {
    one = Vector(static_cast<Eigen::Index>(dim));
    for (std::size_t x = 0; x < points; ++x)
      one->segment(static_cast<Eigen::Index>(x * d), static_cast<Eigen::Index>(d)) = *base->unit();
  }
  return std::make_shared<const FiniteBanachAlgebra>(dim, std::move(mult), VectorValuedNorm{base, space},
                                                     std::move(one), base->field(),
                                                     "C(" + std::to_string(points) + "," + base->descriptor() + ")");
}

AlgebraHandle make_custom_algebra(std::size_t dim, std::vector<Scalar> mult, std::vector<double> weights,
                                  std::optional<Vector> unit, ScalarField field) {
  if (weights.size() != dim) throw InvalidArgument("weight vector length does not match dimension");
  for (double w : weights)
    if (!(w > 0.0)) throw InvalidArgument("norm weights must be positive");
  std::ostringstream desc;
  desc << "custom(" << dim << ',' << field_suffix(field) << ";";
  for (const auto& c : mult) desc << c.real() << ':' << c.imag() << ' ';
  desc << ")";
  auto algebra = std::make_shared<const FiniteBanachAlgebra>(dim, std::move(mult), WeightedEll1Norm{std::move(weights)},
                                                             std::move(unit), field, desc.str());
  const double defect = associativity_defect(*algebra);
  if (defect > 1e-10) throw InvalidArgument("structure constants are not associative");
  return algebra;
}

std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n) {
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) table[g][h] = (g + h) % n;
  return table;
}

double associativity_defect(const FiniteBanachAlgebra& algebra) {
  const auto d = algebra.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          // ((e_i e_j) e_k)_l vs (e_i (e_j e_k))_l
          Scalar left = 0.0;
          Scalar right = 0.0;
          for (std::size_t m = 0; m < d; ++m) {
            left += algebra.structure_constant(i, j, m) * algebra.structure_constant(m, k, l);
            right += algebra.structure_constant(j, k, m) * algebra.structure_constant(i, m, l);
          }
          worst = std::max(worst, std::abs(left - right));
        }
  return worst;
}

AlgebraElement evaluation_hom(const AlgebraElement& f, std::size_t x0) {
  const auto& vv = f.algebra()->vector_valued();
  if (x0 >= vv.space->size()) throw InvalidArgument("evaluation point out of range");
  const auto d = static_cast<Eigen::Index>(vv.base->dim());
  return {vv.base, f.coeffs().segment(static_cast<Eigen::Index>(x0) * d, d)};
}

AlgebraElement constant_function(const AlgebraHandle& cxa, const AlgebraElement& a) {
  const auto& vv = cxa->vector_valued();
  require_same_algebra(*vv.base, *a.algebra(), "constant_function");
  const auto d = static_cast<Eigen::Index>(vv.base->dim());
  Vector v(static_cast<Eigen::Index>(cxa->dim()));
  for (std::size_t x = 0; x < vv.space->size(); ++x) v.segment(static_cast<Eigen::Index>(x) * d, d) = a.coeffs();
  return {cxa, std::move(v)};
}

AlgebraElement function_from_values(const AlgebraHandle& cxa, const std::vector<AlgebraElement>& values) {
  const auto& vv = cxa->vector_valued();
  if (values.size() != vv.space->size()) throw InvalidArgument("need one value per point");
  const auto d = static_cast<Eigen::Index>(vv.base->dim());
  Vector v(static_cast<Eigen::Index>(cxa->dim()));
  for (std::size_t x = 0; x < values.size(); ++x) {
    require_same_algebra(*vv.base, *values[x].algebra(), "function_from_values");
    v.segment(static_cast<Eigen::Index>(x) * d, d) = values[x].coeffs();
  }
  return {cxa, std::move(v)};
}

AlgebraElement scalar_times(const AlgebraHandle& cxa, const AlgebraElement& f, const AlgebraElement& a) {
  const auto& vv = cxa->vector_valued();
  if (!f.algebra()->is_sup() || f.dim() != vv.space->size())
    throw AlgebraMismatch("scalar_times: " + f.algebra()->descriptor() + " is not C(X) for " + cxa->descriptor());
  require_same_algebra(*vv.base, *a.algebra(), "scalar_times");
  const auto d = static_cast<Eigen::Index>(vv.base->dim());
  Vector v(static_cast<Eigen::Index>(cxa->dim()));
  for (std::size_t x = 0; x < vv.space->size(); ++x)
    v.segment(static_cast<Eigen::Index>(x) * d, d) = f[x] * a.coeffs();
  return {cxa, std::move(v)};
}

AlgebraHandle scalar_functions(const AlgebraHandle& cxa) {
  const auto& vv = cxa->vector_valued();
  return make_sup_algebra(vv.space->size(), cxa->field());
}

}  // namespace amenlab
