#include <cmath>

#include "test_support.hpp"

using namespace amenlab;
using amenlab::testing::algebra_zoo;
using amenlab::testing::coeff_gap;

TEST_CASE("sup algebra") {
  SUBCASE("n = 1 is the scalar field") {
    const auto a = make_sup_algebra(1);
    CHECK(make_element(a, std::vector<Scalar>{{3.0, 4.0}}).norm() == doctest::Approx(5.0));
  }
  SUBCASE("pointwise product") {
    const auto a = make_sup_algebra(2);
    const auto x = make_element(a, {1.0, -1.0});
    const auto y = make_element(a, {1.0, 1.0});
    CHECK(coeff_gap(x * y, make_element(a, {1.0, -1.0})) == 0.0);
    CHECK((x * y).norm() == 1.0);
  }
  SUBCASE("sup of moduli") { CHECK(make_element(make_sup_algebra(3), {2.0, 0.0, 1.0}).norm() == 2.0); }
  CHECK(make_sup_algebra(3)->is_commutative());
  CHECK_THROWS_AS(make_sup_algebra(0), InvalidArgument);
}

TEST_CASE("matrix algebra operator norm") {
  const auto m2 = make_matrix_algebra(2);
  CHECK(unit(m2).norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(basis_element(m2, 1).norm() == doctest::Approx(1.0).epsilon(1e-14));
  // a^T a = [[1,1],[1,2]] has characteristic polynomial t^2 - 3t + 1.
  const double lambda = (3.0 + std::sqrt(5.0)) / 2.0;
  CHECK(make_element(m2, {1.0, 1.0, 0.0, 1.0}).norm() == doctest::Approx(std::sqrt(lambda)).epsilon(1e-14));
  CHECK(std::sqrt(lambda) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-15));
  // e12 e21 = e11
  const auto e12 = basis_element(m2, 1);
  const auto e21 = basis_element(m2, 2);
  CHECK(coeff_gap(e12 * e21, basis_element(m2, 0)) == 0.0);
  CHECK((e12 * e21).norm() == doctest::Approx(1.0));
  CHECK_FALSE(m2->is_commutative());
  CHECK(make_matrix_algebra(1)->is_commutative());
  CHECK_THROWS_AS(make_matrix_algebra(0), InvalidArgument);
}

TEST_CASE("group algebra") {
  const auto z2 = make_group_algebra(cyclic_group_table(2));
  CHECK(z2->dim() == 2);
  const auto g = basis_element(z2, 1);
  CHECK(coeff_gap(g * g, basis_element(z2, 0)) == 0.0);
  CHECK(make_element(z2, {1.0, 1.0}).norm() == 2.0);

  const auto z3 = make_group_algebra(cyclic_group_table(3));
  CHECK(coeff_gap(basis_element(z3, 1) * basis_element(z3, 2), basis_element(z3, 0)) == 0.0);
  CHECK(z3->is_commutative());

  const auto s3 = make_group_algebra(amenlab::testing::s3_table());
  CHECK_FALSE(s3->is_commutative());
  CHECK(unit(s3).norm() == 1.0);
}

TEST_CASE("group tables that are not groups are rejected") {
  CHECK_THROWS_AS(make_group_algebra({}), InvalidArgument);
  CHECK_THROWS_AS(make_group_algebra({{0, 1}, {1, 1}}), InvalidArgument);
  CHECK_THROWS_AS(make_group_algebra({{0, 1}, {1}}), InvalidArgument);
  CHECK_THROWS_AS(make_group_algebra({{0, 2}, {1, 0}}), InvalidArgument);
  // Latin square with identity 0 that is not associative.
  const std::vector<std::vector<std::size_t>> loop = {
      {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  CHECK_THROWS_WITH_AS(make_group_algebra(loop), doctest::Contains("associa"), InvalidArgument);
}

TEST_CASE("truncated polynomial algebra") {
  const auto t = make_truncated_poly_algebra();
  const auto one = unit(t);
  const auto x = basis_element(t, 1);
  CHECK((x * x).is_zero());
  CHECK(coeff_gap((one + x) * (one - x), one) == 0.0);
  CHECK((one + x).norm() == 2.0);
}

TEST_CASE("vector-valued algebra") {
  const auto m2 = make_matrix_algebra(2);
  SUBCASE("one point is an isometric copy of the base") {
    const auto cxa = make_vector_valued(make_grid_space(1, 1.0), m2);
    Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      const auto a = random_element(m2, rng);
      const auto f = constant_function(cxa, a);
      CHECK(std::abs(f.norm() - a.norm()) <= 1e-15 * a.norm());
    }
  }
  SUBCASE("C(X, C) is the sup algebra") {
    const auto cx = make_vector_valued(make_grid_space(4, 1.0), make_sup_algebra(1));
    CHECK(cx->structure_constants() == make_sup_algebra(4)->structure_constants());
  }
  SUBCASE("constant e12 has sup norm 1") {
    const auto cxa = make_vector_valued(make_grid_space(3, 1.0), m2);
    CHECK(constant_function(cxa, basis_element(m2, 1)).norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("norm is the largest base norm over points") {
    const auto cxa = make_vector_valued(make_grid_space(2, 1.0), m2);
    const auto f = function_from_values(cxa, {unit(m2), Scalar(3.0) * basis_element(m2, 2)});
    CHECK(f.norm() == doctest::Approx(3.0).epsilon(1e-14));
  }
}

TEST_CASE("evaluation homomorphism") {
  const auto m2 = make_matrix_algebra(2);
  const auto cxa = make_vector_valued(make_grid_space(2, 1.0), m2);
  CHECK(coeff_gap(evaluation_hom(constant_function(cxa, basis_element(m2, 1)), 1), basis_element(m2, 1)) == 0.0);
  CHECK(coeff_gap(evaluation_hom(unit(cxa), 0), unit(m2)) == 0.0);
  const auto f = function_from_values(cxa, {basis_element(m2, 0), basis_element(m2, 3)});
  CHECK(coeff_gap(evaluation_hom(f, 1), basis_element(m2, 3)) == 0.0);
  CHECK_THROWS_AS(evaluation_hom(f, 2), InvalidArgument);
  CHECK_THROWS_AS(evaluation_hom(basis_element(m2, 0), 0), AlgebraMismatch);

  Rng rng(17);
  for (const auto& alg : algebra_zoo()) {
    if (!alg->is_vector_valued()) continue;
    for (int i = 0; i < 50; ++i) {
      const auto g = random_element(alg, rng);
      const auto h = random_element(alg, rng);
      for (std::size_t x = 0; x < alg->vector_valued().space->size(); ++x)
        CHECK(coeff_gap(evaluation_hom(g * h, x), evaluation_hom(g, x) * evaluation_hom(h, x)) < 1e-12);
    }
  }
}

TEST_CASE("structure constants are associative for every family") {
  for (const auto& alg : algebra_zoo()) {
    CAPTURE(alg->descriptor());
    REQUIRE(alg->dim() <= 12);
    CHECK(associativity_defect(*alg) == 0.0);
  }
  for (const auto& alg : algebra_zoo(ScalarField::kReal)) CHECK(associativity_defect(*alg) == 0.0);
}

TEST_CASE("norms are submultiplicative") {
  Rng rng(2024);
  for (const auto& alg : algebra_zoo()) {
    CAPTURE(alg->descriptor());
    int failures = 0;
    for (int i = 0; i < 1000; ++i) {
      const auto a = random_element(alg, rng);
      const auto b = random_element(alg, rng);
      if ((a * b).norm() > a.norm() * b.norm() * (1.0 + 1e-12)) ++failures;
    }
    CHECK(failures == 0);
  }
}

TEST_CASE("unit laws") {
  Rng rng(5);
  for (const auto& alg : algebra_zoo()) {
    REQUIRE(alg->is_unital());
    const auto a = random_element(alg, rng);
    CHECK(coeff_gap(unit(alg) * a, a) < 1e-14);
    CHECK(coeff_gap(a * unit(alg), a) < 1e-14);
    CHECK(unit(alg).norm() == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("algebra mismatch and real mode") {
  const auto m2 = make_matrix_algebra(2);
  const auto m2b = make_matrix_algebra(2);
  CHECK_NOTHROW(unit(m2) + unit(m2b));
  CHECK_THROWS_AS(unit(m2) * unit(make_sup_algebra(4)), AlgebraMismatch);
  CHECK_THROWS_AS(unit(m2) + unit(make_matrix_algebra(2, ScalarField::kReal)), AlgebraMismatch);
  const auto real = make_sup_algebra(2, ScalarField::kReal);
  CHECK_THROWS_AS(make_element(real, std::vector<Scalar>{{1.0, 1.0}, {0.0, 0.0}}), InvalidArgument);
  CHECK_THROWS_AS(make_element(real, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(basis_element(real, 2), InvalidArgument);
}

TEST_CASE("custom algebras") {
  // span{1, x} with x^2 = 0 written out by hand.
  std::vector<Scalar> mult(8, 0.0);
  mult[(0 * 2 + 0) * 2 + 0] = 1.0;
  mult[(0 * 2 + 1) * 2 + 1] = 1.0;
  mult[(1 * 2 + 0) * 2 + 1] = 1.0;
  const auto t = make_custom_algebra(2, mult, {1.0, 1.0}, Vector::Unit(2, 0), ScalarField::kComplex);
  CHECK(t->is_commutative());
  CHECK(associativity_defect(*t) == 0.0);
  std::vector<Scalar> bad = mult;
  bad[(1 * 2 + 1) * 2 + 0] = 1.0;  // x^2 = 1 stays associative
  CHECK_NOTHROW(make_custom_algebra(2, bad, {1.0, 1.0}, Vector::Unit(2, 0), ScalarField::kComplex));
  bad[(1 * 2 + 1) * 2 + 1] = 1.0;  // x^2 = 1 + x, still associative (commutative, one generator)
  CHECK_NOTHROW(make_custom_algebra(2, bad, {1.0, 1.0}, std::nullopt, ScalarField::kComplex));
  std::vector<Scalar> nonassoc(8, 0.0);
  nonassoc[(0 * 2 + 0) * 2 + 1] = 1.0;  // e0 e0 = e1, e1 e0 = e0
  nonassoc[(1 * 2 + 0) * 2 + 0] = 1.0;
  CHECK_THROWS_AS(make_custom_algebra(2, nonassoc, {1.0, 1.0}, std::nullopt, ScalarField::kComplex),
                  InvalidArgument);
  CHECK_THROWS_AS(make_custom_algebra(2, mult, {1.0}, std::nullopt, ScalarField::kComplex), InvalidArgument);
}
