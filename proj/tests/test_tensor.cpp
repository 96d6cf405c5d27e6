#include <cmath>

#include "amenlab/diagonal.hpp"
#include "amenlab/projective_lp.hpp"
#include "amenlab/space.hpp"
#include "test_support.hpp"

using namespace amenlab;
using amenlab::testing::algebra_zoo;
using amenlab::testing::coeff_gap;
using amenlab::testing::max_abs;

namespace {

DecomposedTensor zero_tensor(const AlgebraHandle& a) { return DecomposedTensor(a, a); }

}  // namespace

TEST_CASE("module actions") {
  const auto m2 = make_matrix_algebra(2);
  Rng rng(1);
  const auto u = random_tensor(m2, m2, 3, rng);
  CHECK(tensors_equal(act_left(unit(m2), u), u, 0.0));
  CHECK(max_abs(act_left(zero(m2), u).coefficient_tensor()) == 0.0);

  const auto c2 = make_sup_algebra(2);
  const auto e1 = basis_element(c2, 0);
  const auto e2 = basis_element(c2, 1);
  CHECK(max_abs(act_left(e1, DecomposedTensor::elementary(e2, e2)).coefficient_tensor()) == 0.0);
  CHECK_THROWS_AS(act_left(unit(c2), u), AlgebraMismatch);
  CHECK_THROWS_AS(act_right(u, unit(c2)), AlgebraMismatch);
}

TEST_CASE("bimodule axioms on random triples") {
  Rng rng(11);
  for (const auto& alg : algebra_zoo()) {
    CAPTURE(alg->descriptor());
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_element(alg, rng);
      const auto b = random_element(alg, rng);
      const auto u = random_tensor(alg, alg, 3, rng);
      const double scale = 1.0 + a.norm() * b.norm() * norm_raw(u);
      CHECK(coefficient_distance(act_left(a * b, u), act_left(a, act_left(b, u))) <= 1e-12 * scale);
      CHECK(coefficient_distance(act_right(u, a * b), act_right(act_right(u, a), b)) <= 1e-12 * scale);
      CHECK(coefficient_distance(act_right(act_left(a, u), b), act_left(a, act_right(u, b))) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("product map intertwines the actions") {
  Rng rng(12);
  for (const auto& alg : algebra_zoo()) {
    CAPTURE(alg->descriptor());
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_element(alg, rng);
      const auto u = random_tensor(alg, alg, 3, rng);
      const double scale = 1.0 + a.norm() * norm_raw(u);
      CHECK(coeff_gap(product_map(act_left(a, u)), a * product_map(u)) <= 1e-12 * scale);
      CHECK(coeff_gap(product_map(act_right(u, a)), product_map(u) * a) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("product map examples") {
  const auto m2 = make_matrix_algebra(2);
  CHECK(coeff_gap(product_map(DecomposedTensor::elementary(unit(m2), unit(m2))), unit(m2)) == 0.0);
  const auto c4 = make_sup_algebra(4);
  CHECK(coeff_gap(product_map(exact_diagonal_sup(c4)), unit(c4)) == 0.0);
  DecomposedTensor d(m2, m2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) d.add_term(Scalar(0.5) * basis_element(m2, i * 2 + j), basis_element(m2, j * 2 + i));
  CHECK(coeff_gap(product_map(d), unit(m2)) == 0.0);
  CHECK_THROWS_AS(product_map(DecomposedTensor::elementary(unit(m2), unit(c4))), AlgebraMismatch);
}

TEST_CASE("commutators") {
  const auto z3 = make_group_algebra(cyclic_group_table(3));
  Rng rng(4);
  const auto d = exact_diagonal_group(z3);
  for (int i = 0; i < 10; ++i) CHECK(max_abs(commutator(random_element(z3, rng), d).coefficient_tensor()) == 0.0);
  const auto m2 = make_matrix_algebra(2);
  const auto u = random_tensor(m2, m2, 4, rng);
  CHECK(max_abs(commutator(unit(m2), u).coefficient_tensor()) <= 1e-12);
  CHECK(max_abs(add(u, scale(-1.0, u)).coefficient_tensor()) <= 1e-12);
  CHECK(commutator(unit(m2), u).size() == 2 * u.size());
}

TEST_CASE("coefficient-tensor equality ignores the decomposition") {
  Rng rng(21);
  const auto m2 = make_matrix_algebra(2);
  for (int trial = 0; trial < 50; ++trial) {
    const auto u = random_tensor(m2, m2, 3, rng);
    // Split every term a (x) b into (a/3) (x) b + (2a/3) (x) b.
    DecomposedTensor split(m2, m2);
    for (const auto& t : u.terms()) {
      split.add_term(Scalar(1.0 / 3.0) * t.left, t.right);
      split.add_term(Scalar(2.0 / 3.0) * t.left, t.right);
    }
    CHECK(tensors_equal(u, split));
    CHECK(tensors_equal(u, best_decomposition(u)));
  }
}

TEST_CASE("norm_upper examples") {
  const auto m2 = make_matrix_algebra(2);
  const auto a = make_element(m2, {1.0, 1.0, 0.0, 1.0});
  const auto b = make_element(m2, {0.0, 2.0, 0.0, 0.0});
  CHECK(norm_upper(DecomposedTensor::elementary(a, b)) == doctest::Approx(a.norm() * b.norm()).epsilon(1e-14));
  CHECK(norm_upper(zero_tensor(m2)) == 0.0);
  CHECK(norm_upper(DecomposedTensor::elementary(zero(m2), b)) == 0.0);

  const auto c2 = make_sup_algebra(2, ScalarField::kReal);
  const auto e1 = basis_element(c2, 0);
  const auto e2 = basis_element(c2, 1);
  DecomposedTensor balanced(c2, c2);
  balanced.add_term(Scalar(0.5) * (e1 + e2), e1 - e2);
  balanced.add_term(Scalar(0.5) * (e1 - e2), e1 + e2);
  DecomposedTensor plain(c2, c2);
  plain.add_term(e1, e1);
  plain.add_term(-e2, e2);
  CHECK(tensors_equal(balanced, plain, 0.0));
  CHECK(norm_upper(balanced) == 1.0);
  CHECK(norm_exact_lp(balanced) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("merging proportional terms") {
  const auto m2 = make_matrix_algebra(2);
  const auto a = make_element(m2, {1.0, 2.0, 0.0, -1.0});
  const auto b = basis_element(m2, 1);
  DecomposedTensor u(m2, m2);
  u.add_term(a, b);
  u.add_term(Scalar(-1.0) * a, b);
  CHECK(norm_raw(u) > 0.0);
  CHECK(norm_upper(u) == 0.0);
}

TEST_CASE("norm_upper is an upper bound for the exact norm") {
  Rng rng(31);
  for (std::size_t m = 1; m <= 4; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto left = make_sup_algebra(m, ScalarField::kReal);
      const auto right = make_sup_algebra(n, ScalarField::kReal);
      for (int trial = 0; trial < 10; ++trial) {
        const auto u = random_tensor(left, right, 1 + static_cast<std::size_t>(trial % 5), rng);
        CHECK(norm_exact_lp(u) <= norm_upper(u) + 1e-9);
        CHECK(norm_upper(u) <= norm_raw(u) * (1.0 + 1e-12));
      }
    }
}

TEST_CASE("grothendieck bound") {
  const auto c3 = make_sup_algebra(3);
  const auto one = unit(c3);
  const auto k = GrothendieckConstant::for_field(ScalarField::kComplex);
  CHECK(k.value == 1.405);
  CHECK(k.c() == 0.7025);
  CHECK(GrothendieckConstant::for_field(ScalarField::kReal).value == 1.783);
  CHECK(grothendieck_bound(DecomposedTensor::elementary(one, one), k) == 1.405);
  CHECK(grothendieck_bound(zero_tensor(c3), k) == 0.0);
  CHECK_THROWS_AS(grothendieck_bound(DecomposedTensor::elementary(unit(make_matrix_algebra(2)), unit(make_matrix_algebra(2))), k),
                  UnsupportedInstance);

  const auto pou = partition_of_unity(ball_cover(make_grid_space(5, 1.0), 1.5));
  CHECK(grothendieck_bound(sqrt_diagonal_u(pou), k) == doctest::Approx(1.405).epsilon(1e-15));

  // Rescaling the factors never beats the balanced form.
  Rng rng(8);
  const auto real3 = make_sup_algebra(3, ScalarField::kReal);
  const auto kr = GrothendieckConstant::for_field(ScalarField::kReal);
  for (int trial = 0; trial < 100; ++trial) {
    const auto u = random_tensor(real3, real3, 4, rng);
    const double balanced = grothendieck_bound_balanced(u, kr);
    CHECK(balanced <= grothendieck_bound(u, kr) * (1.0 + 1e-12));
    CHECK(norm_exact_lp(u) <= balanced + 1e-9);
  }
}

TEST_CASE("mixed tensor") {
  const auto x = make_grid_space(3, 1.0);
  const auto m2 = make_matrix_algebra(2);
  const auto cxa = make_vector_valued(x, m2);
  const auto cx = scalar_functions(cxa);
  Rng rng(5);
  const auto alpha = random_tensor(m2, m2, 3, rng);

  SUBCASE("1 (x) 1 embeds alpha as constants") {
    const auto T = mixed_tensor(DecomposedTensor::elementary(unit(cx), unit(cx)), alpha, cxa);
    const Matrix c = T.coefficient_tensor();
    const Matrix a = alpha.coefficient_tensor();
    for (Eigen::Index p = 0; p < 3; ++p)
      for (Eigen::Index q = 0; q < 3; ++q) CHECK(max_abs(Matrix(c.block(p * 4, q * 4, 4, 4) - a)) <= 1e-14);
    CHECK(norm_upper(T) == doctest::Approx(norm_upper(alpha)).epsilon(1e-12));
  }
  SUBCASE("one point reduces to a scalar multiple") {
    const auto pt = make_vector_valued(make_grid_space(1, 1.0), m2);
    const auto cpt = scalar_functions(pt);
    const auto s = make_element(cpt, {-2.0});
    const auto T = mixed_tensor(DecomposedTensor::elementary(s, unit(cpt)), alpha, pt);
    CHECK(max_abs(Matrix(T.coefficient_tensor() + 2.0 * alpha.coefficient_tensor())) <= 1e-14);
  }
  SUBCASE("norm inequality") {
    for (int trial = 0; trial < 100; ++trial) {
      const auto u = random_tensor(cx, cx, 1 + static_cast<std::size_t>(trial % 4), rng);
      const auto al = random_tensor(m2, m2, 1 + static_cast<std::size_t>(trial % 3), rng);
      CHECK(norm_upper(mixed_tensor(u, al, cxa)) <= norm_upper(u) * norm_upper(al) * (1.0 + 1e-12));
    }
  }
  CHECK_THROWS_AS(mixed_tensor(DecomposedTensor::elementary(unit(make_sup_algebra(2)), unit(make_sup_algebra(2))), alpha, cxa),
                  AlgebraMismatch);
}
