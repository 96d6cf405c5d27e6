#pragma once

#include <cstdint>
#include <random>

#include "amenlab/space.hpp"
#include "amenlab/tensor.hpp"

namespace amenlab {

/// All sampling goes through an explicitly seeded engine.
using Rng = std::mt19937_64;

/// Coefficients i.i.d. standard normal (real and imaginary parts in complex
/// mode), multiplied by `scale`.
AlgebraElement random_element(const AlgebraHandle& algebra, Rng& rng, double scale = 1.0);

DecomposedTensor random_tensor(const AlgebraHandle& left, const AlgebraHandle& right, std::size_t terms, Rng& rng);

/// Random f in C(X, A) with ||f(x) - f(y)|| <= lipschitz * d(x, y):
/// f(x) = b_0 + sum_k d(x, p_k) b_k with sum_k ||b_k|| = lipschitz and
/// ||b_0|| = 1 (anchors p_k drawn from the points).
AlgebraElement random_lipschitz_function(const AlgebraHandle& cxa, Rng& rng, double lipschitz = 1.0,
                                         std::size_t anchors = 3);

/// Random elementary function sum_k f_k a_k with `terms` terms, f_k in
/// C(X) with values in [0, 1] and ||a_k|| = 1.
ElementaryFunction random_elementary_function(const AlgebraHandle& cxa, Rng& rng, std::size_t terms);

}  // namespace amenlab
