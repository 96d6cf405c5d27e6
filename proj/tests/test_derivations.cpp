#include <Eigen/LU>
#include <random>

#include "amenlab/derivations.hpp"
#include "amenlab/random.hpp"
#include "test_support.hpp"

using namespace amenlab;
using amenlab::testing::max_abs;

namespace {

// Same algebra written in the basis f_i = sum_k P(k, i) e_k.
AlgebraHandle change_basis(const AlgebraHandle& alg, const Matrix& P) {
  const std::size_t n = alg->dim();
  const Matrix Pinv = P.inverse();
  std::vector<Scalar> mult(n * n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const AlgebraElement fi(alg, P.col(static_cast<Eigen::Index>(i)));
      const AlgebraElement fj(alg, P.col(static_cast<Eigen::Index>(j)));
      const Vector prod = Pinv * (fi * fj).coeffs();
      for (std::size_t k = 0; k < n; ++k) mult[(i * n + j) * n + k] = prod[static_cast<Eigen::Index>(k)];
    }
  std::optional<Vector> one;
  if (alg->unit()) one = Vector(Pinv * *alg->unit());
  return make_custom_algebra(n, std::move(mult), std::vector<double>(n, 1.0), one, alg->field());
}

Matrix random_invertible(std::size_t n, Rng& rng) {
  std::uniform_real_distribution<double> unif(-0.5, 0.5);
  for (;;) {
    Matrix P = Matrix::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < P.rows(); ++i)
      for (Eigen::Index j = 0; j < P.cols(); ++j) P(i, j) += unif(rng);
    if (std::abs(P.determinant()) > 0.1) return P;
  }
}

}  // namespace

TEST_CASE("dual bimodule actions") {
  Rng rng(2);
  const auto c3 = make_sup_algebra(3);
  const auto bim = dual_bimodule(c3);
  for (int trial = 0; trial < 10; ++trial) {
    const Vector a = random_element(c3, rng).coeffs();
    const Vector phi = random_element(c3, rng).coeffs();
    CHECK(max_abs(Vector(bim.act_left(a, phi) - bim.act_right(phi, a))) <= 1e-15);
  }

  const auto tp = make_truncated_poly_algebra();
  const auto tb = dual_bimodule(tp);
  const Vector one = unit(tp).coeffs();
  const Vector x = basis_element(tp, 1).coeffs();
  // x.x* = 1* and x.1* = 0
  CHECK(max_abs(Vector(tb.act_left(x, x) - one)) == 0.0);
  CHECK(max_abs(tb.act_left(x, one)) == 0.0);

  const auto m2 = make_matrix_algebra(2);
  const auto mb = dual_bimodule(m2);
  const Vector phi = random_element(m2, rng).coeffs();
  CHECK(max_abs(Vector(mb.act_left(unit(m2).coeffs(), phi) - phi)) <= 1e-15);
  CHECK(max_abs(Vector(mb.act_right(phi, unit(m2).coeffs()) - phi)) <= 1e-15);
  // Module associativity: (ab).phi = a.(b.phi)
  for (int trial = 0; trial < 10; ++trial) {
    const auto a = random_element(m2, rng);
    const auto b = random_element(m2, rng);
    const Vector lhs = mb.act_left((a * b).coeffs(), phi);
    const Vector rhs = mb.act_left(a.coeffs(), mb.act_left(b.coeffs(), phi));
    CHECK(max_abs(Vector(lhs - rhs)) <= 1e-12);
  }
}

TEST_CASE("derivation space dimensions") {
  for (std::size_t n = 1; n <= 5; ++n) CHECK(derivation_space(make_sup_algebra(n)).dim == 0);

  const auto tp = make_truncated_poly_algebra();
  const auto ds = derivation_space(tp);
  REQUIRE(ds.dim == 1);
  const Matrix w = normalize_witness(ds.basis.front());
  // D(1) = 0, D(x) = 1*
  CHECK(std::abs(w(0, 0)) <= 1e-12);
  CHECK(std::abs(w(1, 0)) <= 1e-12);
  CHECK(std::abs(w(0, 1) - Scalar(1.0)) <= 1e-12);
  CHECK(std::abs(w(1, 1)) <= 1e-12);

  for (std::size_t n = 1; n <= 3; ++n) {
    const auto mn = make_matrix_algebra(n);
    const auto space = derivation_space(mn);
    CHECK(space.dim == n * n - 1);
    CHECK(span_dimension(inner_derivations(mn)) == space.dim);
  }
  CHECK(derivation_space(make_group_algebra(cyclic_group_table(3))).dim == 0);
  CHECK(derivation_space(make_group_algebra(amenlab::testing::s3_table())).dim ==
        span_dimension(inner_derivations(make_group_algebra(amenlab::testing::s3_table()))));
}

TEST_CASE("every basis derivation satisfies the Leibniz rule") {
  for (const auto field : {ScalarField::kReal, ScalarField::kComplex})
    for (const auto& alg : amenlab::testing::algebra_zoo(field)) {
      if (alg->dim() > 12) continue;
      const auto space = derivation_space(alg);
      for (const auto& d : space.basis) {
        CHECK(leibniz_defect(alg, d) <= 1e-10);
        if (alg->unit()) CHECK(max_abs(Vector(d * *alg->unit())) <= 1e-12);
      }
    }
}

TEST_CASE("derivation dimension is basis independent") {
  Rng rng(404);
  for (const auto& alg : {make_truncated_poly_algebra(ScalarField::kReal), make_sup_algebra(3, ScalarField::kReal),
                          make_matrix_algebra(2, ScalarField::kReal)}) {
    const std::size_t expected = derivation_space(alg).dim;
    for (int trial = 0; trial < 3; ++trial) {
      const auto changed = change_basis(alg, random_invertible(alg->dim(), rng));
      CHECK(derivation_space(changed).dim == expected);
    }
  }
}

TEST_CASE("weak amenability of commutative algebras") {
  CHECK(weakly_amenable_commutative(make_sup_algebra(4)));
  CHECK_FALSE(weakly_amenable_commutative(make_truncated_poly_algebra()));
  CHECK(weakly_amenable_commutative(make_group_algebra(cyclic_group_table(2))));
  CHECK_THROWS_AS(weakly_amenable_commutative(make_matrix_algebra(2)), InvalidArgument);
}

TEST_CASE("tilde extension") {
  const auto x = make_grid_space(3, 0.5);
  const auto tp = make_truncated_poly_algebra();
  const auto cxa = make_vector_valued(x, tp);
  const auto base = derivation_space(tp).basis.front();

  for (std::size_t p = 0; p < 3; ++p) {
    const Matrix lifted = lift_derivation_at_point(base, cxa, p);
    CHECK(leibniz_defect(cxa, lifted) <= 1e-10);
    const Matrix tilde = tilde_extension(lifted, cxa);
    CHECK(tilde.rows() == 6);
    CHECK(tilde.cols() == 3);
    CHECK(tilde_leibniz_defect(tilde, cxa) <= 1e-10);
    // D~(1) = D(1) = 0
    CHECK(max_abs(Vector(tilde.rowwise().sum())) <= 1e-12);
  }
  const Matrix zero_map = Matrix::Zero(6, 6);
  CHECK(max_abs(tilde_extension(zero_map, cxa)) == 0.0);

  const std::vector<Scalar> nilpotent(8, Scalar(0.0));
  const auto nonunital = make_custom_algebra(2, nilpotent, {1.0, 1.0}, std::nullopt, ScalarField::kComplex);
  const auto cxn = make_vector_valued(x, nonunital);
  CHECK_THROWS_AS(tilde_extension(Matrix::Zero(6, 6), cxn), InvalidArgument);
  CHECK_THROWS_AS(tilde_extension(Matrix::Zero(5, 6), cxa), InvalidArgument);
}

TEST_CASE("transfer between A and C(X, A)") {
  const auto c2 = make_sup_algebra(2);
  const auto r = weak_amenability_transfer_check(make_grid_space(3, 0.5), c2);
  CHECK(r.base_dim == 0);
  CHECK(r.lifted_dim == 0);
  CHECK(r.base_weakly_amenable);
  CHECK(r.lifted_weakly_amenable);
  CHECK(r.consistent);
  CHECK_FALSE(r.lifted_witness.has_value());

  const auto tp = make_truncated_poly_algebra();
  const auto t2 = weak_amenability_transfer_check(make_grid_space(2, 1.0), tp);
  CHECK(t2.base_dim == 1);
  CHECK(t2.lifted_dim >= 1);
  CHECK_FALSE(t2.lifted_weakly_amenable);
  REQUIRE(t2.lifted_witness.has_value());
  CHECK(t2.witness_leibniz_defect <= 1e-10);
  CHECK(max_abs(*t2.lifted_witness) > 0.0);
  CHECK(t2.consistent);

  const auto t1 = weak_amenability_transfer_check(make_grid_space(1, 1.0), tp);
  CHECK(t1.lifted_dim == t1.base_dim);

  CHECK_THROWS_AS(weak_amenability_transfer_check(make_grid_space(2, 1.0), make_matrix_algebra(2)), InvalidArgument);
}
