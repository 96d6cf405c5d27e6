#include <doctest.h>

#include "amenlab/metric_space.hpp"

using namespace amenlab;

TEST_CASE("one-point grid has no metric constraints") {
  const auto x = make_grid_space(1, 0.3);
  CHECK(x->size() == 1);
  CHECK(x->diameter() == 0.0);
  CHECK(x->min_positive_distance() == 0.0);
  CHECK(x->labels().front() == "p0");
}

TEST_CASE("grid distances are multiples of the spacing") {
  const auto x = make_grid_space(3, 0.5);
  CHECK(x->distance(0, 2) == 1.0);
  CHECK(x->distance(2, 1) == 0.5);
  CHECK(x->diameter() == 1.0);
  CHECK(x->min_positive_distance() == 0.5);
}

TEST_CASE("grid metric satisfies the triangle inequality on every triple") {
  const auto x = make_grid_space(7, 0.3);
  for (std::size_t a = 0; a < 7; ++a)
    for (std::size_t b = 0; b < 7; ++b)
      for (std::size_t c = 0; c < 7; ++c) CHECK(x->distance(a, c) <= x->distance(a, b) + x->distance(b, c) + 1e-15);
}

TEST_CASE("invalid metrics are rejected") {
  CHECK_THROWS_AS(make_grid_space(0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_grid_space(3, 0.0), InvalidArgument);
  RealMatrix asym(2, 2);
  asym << 0, 1, 2, 0;
  CHECK_THROWS_AS(make_metric_space({"a", "b"}, asym), InvalidArgument);
  RealMatrix collapsed(2, 2);
  collapsed << 0, 0, 0, 0;
  CHECK_THROWS_AS(make_metric_space({"a", "b"}, collapsed), InvalidArgument);
  RealMatrix triangle(3, 3);
  triangle << 0, 1, 5, 1, 0, 1, 5, 1, 0;
  CHECK_THROWS_AS(make_metric_space({"a", "b", "c"}, triangle), InvalidArgument);
  RealMatrix shape(2, 3);
  shape.setZero();
  CHECK_THROWS_AS(make_metric_space({"a", "b"}, shape), InvalidArgument);
}

TEST_CASE("explicit metric keeps labels") {
  RealMatrix d(3, 3);
  d << 0, 1, 2, 1, 0, 1.5, 2, 1.5, 0;
  const auto x = make_metric_space({"u", "v", "w"}, d);
  CHECK(x->labels()[2] == "w");
  CHECK(x->diameter() == 2.0);
  CHECK(x->min_positive_distance() == 1.0);
  CHECK(*x == *make_metric_space({"u", "v", "w"}, d));
}

TEST_CASE("scalar field round trip") {
  CHECK(parse_scalar_field("real") == ScalarField::kReal);
  CHECK(to_string(ScalarField::kComplex) == "complex");
  CHECK_THROWS_AS(parse_scalar_field("quaternion"), InvalidArgument);
}
