#include "amenlab/random.hpp"

namespace amenlab {

AlgebraElement random_element(const AlgebraHandle& algebra, Rng& rng, double scale) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(algebra->dim()));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double re = gauss(rng);
    const double im = algebra->field() == ScalarField::kComplex ? gauss(rng) : 0.0;
    v[i] = scale * Scalar(re, im);
  }
  return {algebra, std::move(v)};
}

DecomposedTensor random_tensor(const AlgebraHandle& left, const AlgebraHandle& right, std::size_t terms, Rng& rng) {
  DecomposedTensor u(left, right);
  for (std::size_t i = 0; i < terms; ++i) {
    AlgebraElement a = random_element(left, rng);
    u.add_term(std::move(a), random_element(right, rng));
  }
  return u;
}

AlgebraElement random_lipschitz_function(const AlgebraHandle& cxa, Rng& rng, double lipschitz, std::size_t anchors) {
  const auto& vv = cxa->vector_valued();
  const auto& space = *vv.space;
  std::uniform_int_distribution<std::size_t> pick(0, space.size() - 1);

  AlgebraElement offset = random_element(vv.base, rng);
  const double offset_norm = offset.norm();
  if (offset_norm > 0.0) offset = (1.0 / offset_norm) * offset;

  std::vector<std::size_t> points(anchors);
  std::vector<AlgebraElement> directions;
  double total = 0.0;
  for (std::size_t k = 0; k < anchors; ++k) {
    points[k] = pick(rng);
    directions.push_back(random_element(vv.base, rng));
    total += directions.back().norm();
  }
  std::vector<AlgebraElement> values;
  for (std::size_t x = 0; x < space.size(); ++x) {
    AlgebraElement value = offset;
    for (std::size_t k = 0; k < anchors; ++k)
      if (total > 0.0) value = value + (lipschitz * space.distance(x, points[k]) / total) * directions[k];
    values.push_back(std::move(value));
  }
  return function_from_values(cxa, values);
}

ElementaryFunction random_elementary_function(const AlgebraHandle& cxa, Rng& rng, std::size_t terms) {
  const auto& vv = cxa->vector_valued();
  const AlgebraHandle scalars = scalar_functions(cxa);
  std::uniform_real_distribution<double> unit_interval(0.0, 1.0);
  ElementaryFunction out;
  for (std::size_t k = 0; k < terms; ++k) {
    Vector f(static_cast<Eigen::Index>(vv.space->size()));
    for (Eigen::Index x = 0; x < f.size(); ++x) f[x] = unit_interval(rng);
    AlgebraElement a = random_element(vv.base, rng);
    const double n = a.norm();
    if (n > 0.0) a = (1.0 / n) * a;
    out.push_back({AlgebraElement(scalars, std::move(f)), std::move(a)});
  }
  return out;
}

}  // namespace amenlab
