#pragma once

#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "amenlab/metric_space.hpp"
#include "amenlab/types.hpp"

namespace amenlab {

class FiniteBanachAlgebra;
using AlgebraHandle = std::shared_ptr<const FiniteBanachAlgebra>;

// Norm kinds. Each carries whatever the norm (or a family-specific
// construction such as the group diagonal) needs.

/// max_i |c_i| (pointwise algebra C^n).
struct SupNorm {};

/// Largest singular value of the n x n coefficient matrix; basis e_rc sits at
/// index r * n + c.
struct MatrixOperatorNorm {
  std::size_t n = 0;
};

/// sum_g |c_g| on a finite group algebra.
struct GroupEll1Norm {
  std::vector<std::vector<std::size_t>> cayley;
  std::size_t identity = 0;
  std::vector<std::size_t> inverse;
};

/// sum_i w_i |c_i|.
struct WeightedEll1Norm {
  std::vector<double> weights;
};

/// max over points of the base norm; basis (x, i) sits at x * dim(base) + i.
struct VectorValuedNorm {
  AlgebraHandle base;
  SpaceHandle space;
};

using NormKind = std::variant<SupNorm, MatrixOperatorNorm, GroupEll1Norm, WeightedEll1Norm, VectorValuedNorm>;

/// Finite-dimensional Banach algebra given by dense structure constants.
///
/// The product of basis elements is e_i e_j = sum_k mult(i, j, k) e_k. Two
/// algebras are treated as the same algebra when their descriptors agree, so
/// independently constructed copies of e.g. M_2 interoperate.
class FiniteBanachAlgebra {
 public:
  FiniteBanachAlgebra(std::size_t dim, std::vector<Scalar> mult, NormKind norm, std::optional<Vector> unit,
                      ScalarField field, std::string descriptor);

  std::size_t dim() const noexcept { return dim_; }
  ScalarField field() const noexcept { return field_; }
  const NormKind& norm_kind() const noexcept { return norm_; }
  const std::optional<Vector>& unit() const noexcept { return unit_; }
  const std::string& descriptor() const noexcept { return descriptor_; }

  Scalar structure_constant(std::size_t i, std::size_t j, std::size_t k) const {
    return mult_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<Scalar>& structure_constants() const noexcept { return mult_; }

  bool is_commutative() const;
  bool is_unital() const noexcept { return unit_.has_value(); }
  bool same_as(const FiniteBanachAlgebra& other) const noexcept;

  bool is_sup() const noexcept { return std::holds_alternative<SupNorm>(norm_); }
  bool is_vector_valued() const noexcept { return std::holds_alternative<VectorValuedNorm>(norm_); }
  /// Base algebra and point count of a vector-valued algebra; throws otherwise.
  const VectorValuedNorm& vector_valued() const;

  /// Product of coefficient vectors.
  Vector multiply(const Vector& a, const Vector& b) const;
  /// Norm of a coefficient vector. Throws NumericalFailure if the singular
  /// value computation does not converge.
  double norm(const Vector& a) const;

 private:
  std::size_t dim_;
  std::vector<Scalar> mult_;
  // Nonzero (k, c) entries of e_i e_j, indexed by i * dim + j.
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> products_;
  NormKind norm_;
  std::optional<Vector> unit_;
  ScalarField field_;
  std::string descriptor_;
};

/// Coefficient vector tied to an algebra.
class AlgebraElement {
 public:
  AlgebraElement(AlgebraHandle algebra, Vector coeffs);

  const AlgebraHandle& algebra() const noexcept { return algebra_; }
  const Vector& coeffs() const noexcept { return coeffs_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }
  Scalar operator[](std::size_t i) const { return coeffs_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return algebra_->norm(coeffs_); }
  bool is_zero() const { return (coeffs_.array() == Scalar(0.0)).all(); }

  AlgebraElement operator-() const { return {algebra_, -coeffs_}; }

 private:
  AlgebraHandle algebra_;
  Vector coeffs_;
};

AlgebraElement operator+(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator-(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement operator*(Scalar s, const AlgebraElement& a);
/// Algebra product.
AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
double norm(const AlgebraElement& a);
/// Throws InvalidArgument if the algebra has no unit.
AlgebraElement unit(const AlgebraHandle& algebra);
AlgebraElement zero(const AlgebraHandle& algebra);
AlgebraElement basis_element(const AlgebraHandle& algebra, std::size_t i);
AlgebraElement make_element(const AlgebraHandle& algebra, const std::vector<double>& coeffs);
AlgebraElement make_element(const AlgebraHandle& algebra, const std::vector<Scalar>& coeffs);
AlgebraElement make_element(const AlgebraHandle& algebra, std::initializer_list<double> coeffs);

/// Throws AlgebraMismatch unless the two algebras coincide.
void require_same_algebra(const FiniteBanachAlgebra& a, const FiniteBanachAlgebra& b, const char* context);

// Factories.

/// C(X) for an n-point X: pointwise product, sup norm, unit = all ones.
AlgebraHandle make_sup_algebra(std::size_t n, ScalarField field = ScalarField::kComplex);
/// Full n x n matrix algebra with the operator norm.
AlgebraHandle make_matrix_algebra(std::size_t n, ScalarField field = ScalarField::kComplex);
/// Convolution algebra l^1(G) of a finite group given by its Cayley table
/// (cayley[g][h] = index of gh). Rejects tables that are not groups.
AlgebraHandle make_group_algebra(const std::vector<std::vector<std::size_t>>& cayley,
                                 ScalarField field = ScalarField::kComplex);
/// span{1, x} with x^2 = 0 and the l^1 norm.
AlgebraHandle make_truncated_poly_algebra(ScalarField field = ScalarField::kComplex);
/// C(X, A) with the sup-over-points norm.
AlgebraHandle make_vector_valued(const SpaceHandle& space, const AlgebraHandle& base);
/// Algebra from explicit structure constants (index (i * dim + j) * dim + k)
/// with a weighted l^1 norm. Associativity is checked.
AlgebraHandle make_custom_algebra(std::size_t dim, std::vector<Scalar> mult, std::vector<double> weights,
                                  std::optional<Vector> unit, ScalarField field);

/// Cayley table of Z_n.
std::vector<std::vector<std::size_t>> cyclic_group_table(std::size_t n);

/// Largest |(e_i e_j) e_k - e_i (e_j e_k)| coefficient over all basis triples.
double associativity_defect(const FiniteBanachAlgebra& algebra);

// C(X, A) helpers.

/// f(x0) for f in a vector-valued algebra.
AlgebraElement evaluation_hom(const AlgebraElement& f, std::size_t x0);
/// The constant function x -> a in C(X, A).
AlgebraElement constant_function(const AlgebraHandle& cxa, const AlgebraElement& a);
/// x -> values[x].
AlgebraElement function_from_values(const AlgebraHandle& cxa, const std::vector<AlgebraElement>& values);
/// x -> f(x) a for a scalar function f in C(X) and a in A.
AlgebraElement scalar_times(const AlgebraHandle& cxa, const AlgebraElement& f, const AlgebraElement& a);
/// The sup algebra C(X) over the same points (and field) as a vector-valued algebra.
AlgebraHandle scalar_functions(const AlgebraHandle& cxa);

}  // namespace amenlab
