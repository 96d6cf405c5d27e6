#include "amenlab/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace amenlab {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Slack for floating-point rounding in sum_i |sqrt(h_i)|^2 = 1.
constexpr double kRoundingSlack = 1e-12;
// Coefficient tolerance for "alpha commutes with b" relative to ||b|| ||alpha||.
constexpr double kCentralityTolerance = 1e-14;

double safe_ratio(double numerator, double denominator) {
  return denominator > 0.0 ? numerator / denominator : kInfinity;
}

std::string format_violation(const char* what, double value, const char* constant, double target) {
  std::ostringstream msg;
  msg.precision(6);
  msg << what << " " << value << " is not below " << constant << " = " << target;
  return msg.str();
}

double pi_residual(const AlgebraElement& pi_u, const AlgebraElement& a) { return norm(pi_u * a - a); }

Matrix kronecker(const Matrix& outer, const Matrix& inner) {
  Matrix out(outer.rows() * inner.rows(), outer.cols() * inner.cols());
  for (Eigen::Index x = 0; x < outer.rows(); ++x)
    for (Eigen::Index y = 0; y < outer.cols(); ++y)
      out.block(x * inner.rows(), y * inner.cols(), inner.rows(), inner.cols()) = outer(x, y) * inner;
  return out;
}

bool all_below(const std::vector<ElementResidual>& elements, double eps) {
  return std::all_of(elements.begin(), elements.end(),
                     [eps](const ElementResidual& r) { return r.commutator_bound < eps && r.pi_residual < eps; });
}

void require_elements_in(const std::vector<AlgebraElement>& elements, const AlgebraHandle& algebra,
                         const char* context) {
  for (const auto& a : elements) require_same_algebra(*algebra, *a.algebra(), context);
}

}  // namespace

DecomposedTensor exact_diagonal_sup(const AlgebraHandle& algebra) {
  if (!algebra->is_sup()) throw InvalidArgument("exact_diagonal_sup needs a sup algebra");
  DecomposedTensor d(algebra, algebra);
  for (std::size_t i = 0; i < algebra->dim(); ++i) d.add_term(basis_element(algebra, i), basis_element(algebra, i));
  return d;
}

DecomposedTensor exact_diagonal_matrix(const AlgebraHandle& algebra) {
  const auto* kind = std::get_if<MatrixOperatorNorm>(&algebra->norm_kind());
  if (kind == nullptr) throw InvalidArgument("exact_diagonal_matrix needs a matrix algebra");
  const std::size_t n = kind->n;
  const double weight = 1.0 / static_cast<double>(n);
  DecomposedTensor d(algebra, algebra);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      d.add_term(weight * basis_element(algebra, i * n + j), basis_element(algebra, j * n + i));
  return d;
}

DecomposedTensor exact_diagonal_group(const AlgebraHandle& algebra) {
  const auto* group = std::get_if<GroupEll1Norm>(&algebra->norm_kind());
  if (group == nullptr) throw InvalidArgument("exact_diagonal_group needs a group algebra");
  const std::size_t order = group->cayley.size();
  const double weight = 1.0 / static_cast<double>(order);
  DecomposedTensor d(algebra, algebra);
  for (std::size_t g = 0; g < order; ++g)
    d.add_term(weight * basis_element(algebra, g), basis_element(algebra, group->inverse[g]));
  return d;
}

std::optional<DecomposedTensor> exact_diagonal(const AlgebraHandle& algebra) {
  if (algebra->is_sup()) return exact_diagonal_sup(algebra);
  if (std::holds_alternative<MatrixOperatorNorm>(algebra->norm_kind())) return exact_diagonal_matrix(algebra);
  if (std::holds_alternative<GroupEll1Norm>(algebra->norm_kind())) return exact_diagonal_group(algebra);
  return std::nullopt;
}

DiagonalCertificate lift_case1(const DiagonalRequest& request, const std::vector<ElementaryFunction>& elementary_F,
                               const SpaceHandle& space, const GrothendieckConstant& k) {
  const double eps = request.eps;
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  if (elementary_F.size() != request.test_set.size())
    throw InvalidArgument("need one elementary decomposition per test function");
  const DecomposedTensor& alpha = request.base_diagonal;
  require_same_algebra(*alpha.left_algebra(), *alpha.right_algebra(), "lift_case1");
  const AlgebraHandle cxa = make_vector_valued(space, alpha.left_algebra());
  const AlgebraHandle scalars = scalar_functions(cxa);
  require_elements_in(request.test_set, cxa, "lift_case1 test set");

  for (std::size_t i = 0; i < elementary_F.size(); ++i) {
    const AlgebraElement rebuilt = reconstruct(cxa, elementary_F[i]);
    const double gap = (rebuilt.coeffs() - request.test_set[i].coeffs()).cwiseAbs().maxCoeff();
    if (gap > 1e-12 * (1.0 + request.test_set[i].coeffs().cwiseAbs().maxCoeff()))
      throw InvalidArgument("test function " + std::to_string(i) + " does not match its elementary decomposition");
  }

  Schedule schedule;
  schedule.construction = "case1";
  std::size_t max_terms = 0;
  double L = 0.0;
  std::vector<AlgebraElement> F_C;
  for (const auto& terms : elementary_F) {
    max_terms = std::max(max_terms, terms.size());
    for (const auto& t : terms) {
      require_same_algebra(*scalars, *t.f.algebra(), "lift_case1 scalar factor");
      L = std::max({L, t.f.norm(), t.a.norm()});
      F_C.push_back(t.f);
    }
  }
  schedule.N = max_terms + 1;
  schedule.L = L > 0.0 ? L : 1.0;
  schedule.c = k.c();
  schedule.M = norm_upper(alpha);
  const double NL = static_cast<double>(schedule.N) * schedule.L;
  const double c = schedule.c;
  const double M = schedule.M;

  // Base residuals, checked against the schedule before anything is built.
  const AlgebraElement pi_alpha = product_map(alpha);
  const double commutator_target = eps / (4.0 * c * NL);
  const double pi_target = eps / NL;
  std::vector<std::vector<double>> base_commutators(elementary_F.size());
  for (std::size_t i = 0; i < elementary_F.size(); ++i)
    for (const auto& t : elementary_F[i]) {
      const double comm = norm_upper(commutator(t.a, alpha));
      if (!(comm < commutator_target))
        throw PreconditionViolation("eps/(4cNL)", format_violation("base diagonal commutator bound", comm,
                                                                   "eps/(4cNL)", commutator_target));
      const double pi = pi_residual(pi_alpha, t.a);
      if (!(pi < pi_target))
        throw PreconditionViolation("eps/(NL)",
                                    format_violation("base diagonal pi residual", pi, "eps/(NL)", pi_target));
      base_commutators[i].push_back(comm);
    }

  schedule.oscillation_target = safe_ratio(eps, 8.0 * c * M * NL);
  const Cover cover = cover_for_oscillation(space, F_C, schedule.oscillation_target);
  schedule.radius = cover.radius;
  const PartitionOfUnity pou = partition_of_unity(cover, cxa->field());
  const DecomposedTensor u = sqrt_diagonal_u(pou);
  DecomposedTensor U = mixed_tensor(u, alpha, cxa);

  const double u_bound = grothendieck_bound(u, k);
  const double norm_bound = u_bound * M;
  if (norm_bound > 2.0 * c * M * (1.0 + kRoundingSlack))
    throw ConstructionError("lift_case1: norm bound exceeds 2cM");

  const AlgebraElement pi_U = product_map(U);
  std::vector<ElementResidual> elements;
  elements.reserve(request.test_set.size());
  for (std::size_t i = 0; i < request.test_set.size(); ++i) {
    const AlgebraElement& a = request.test_set[i];
    // a.U - U.a = sum_k T(f_k u, a_k alpha - alpha a_k) + T(f_k u - u f_k, alpha a_k)
    double chain = 0.0;
    for (std::size_t t = 0; t < elementary_F[i].size(); ++t) {
      const auto& term = elementary_F[i][t];
      chain += term.f.norm() * u_bound * base_commutators[i][t];
      chain += term.a.norm() * M * commutator_bound_u(term.f, pou, u, k);
    }
    const double direct = norm_upper(commutator(a, U));
    elements.push_back({std::min(chain, direct), pi_residual(pi_U, a)});
  }

  DiagonalCertificate cert{eps, std::move(U), norm_bound, std::move(elements), schedule, cover.center_labels(),
                           false, std::nullopt};
  cert.passed = all_below(cert.elements, eps);
  return cert;
}

DiagonalCertificate lift_case2(const DiagonalRequest& request, const SpaceHandle& space,
                               const GrothendieckConstant& k) {
  const double eps = request.eps;
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  const DecomposedTensor& alpha = request.base_diagonal;
  const AlgebraHandle cxa = make_vector_valued(space, alpha.left_algebra());
  require_elements_in(request.test_set, cxa, "lift_case2 test set");

  const double M = norm_upper(alpha);
  const double c = k.c();
  const double tolerance = std::min(eps / 4.0, safe_ratio(eps, 8.0 * M * c));

  std::vector<ElementaryFunction> elementary;
  std::vector<AlgebraElement> approximations;
  std::vector<double> errors;
  double approximation_radius = kInfinity;
  for (const auto& a : request.test_set) {
    const Cover cover = cover_for_oscillation(space, {a}, tolerance);
    approximation_radius = std::min(approximation_radius, cover.radius);
    elementary.push_back(elementary_approximation(a, cover));
    approximations.push_back(reconstruct(cxa, elementary.back()));
    errors.push_back(norm(a - approximations.back()));
    if (!(errors.back() < tolerance))
      throw ConstructionError("elementary approximation missed its tolerance");
  }

  DiagonalRequest inner = request;
  inner.eps = eps / 2.0;
  inner.test_set = approximations;
  DiagonalCertificate cert = lift_case1(inner, elementary, space, k);

  const AlgebraElement pi_U = product_map(cert.U);
  for (std::size_t i = 0; i < request.test_set.size(); ++i) {
    const AlgebraElement& a = request.test_set[i];
    // a.U - U.a = (a_eps.U - U.a_eps) + ((a - a_eps).U - U.(a - a_eps))
    const double chain = cert.elements[i].commutator_bound + 2.0 * cert.norm_bound * errors[i];
    const double direct = norm_upper(commutator(a, cert.U));
    cert.elements[i] = {std::min(chain, direct), pi_residual(pi_U, a)};
  }
  cert.eps = eps;
  cert.schedule.construction = "case2";
  cert.schedule.approximation_tolerance = tolerance;
  if (!request.test_set.empty()) cert.schedule.approximation_radius = approximation_radius;
  cert.passed = all_below(cert.elements, eps);
  return cert;
}

DiagonalCertificate lift_central_compact(const std::vector<AlgebraElement>& test_set, const DecomposedTensor& alpha,
                                         double eps, const SpaceHandle& space, const GrothendieckConstant& k) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  require_same_algebra(*alpha.left_algebra(), *alpha.right_algebra(), "lift_central_compact");
  const AlgebraHandle cxa = make_vector_valued(space, alpha.left_algebra());
  require_elements_in(test_set, cxa, "lift_central_compact test set");
  const double c = k.c();
  const double alpha_norm = norm_upper(alpha);
  const AlgebraElement pi_alpha = product_map(alpha);

  // K = {a(x) : a in test set, x in X}
  double M_K = 0.0;
  for (const auto& a : test_set)
    for (std::size_t x = 0; x < space->size(); ++x) {
      const AlgebraElement b = evaluation_hom(a, x);
      M_K = std::max(M_K, b.norm());
      const Matrix block = commutator(b, alpha).coefficient_tensor();
      const double defect = block.size() == 0 ? 0.0 : block.cwiseAbs().maxCoeff();
      if (defect > kCentralityTolerance * (1.0 + b.norm() * alpha_norm))
        throw PreconditionViolation("b.alpha - alpha.b = 0",
                                    format_violation("base diagonal commutator coefficient", defect,
                                                     "exact centrality tolerance", kCentralityTolerance));
      const double pi = pi_residual(pi_alpha, b);
      if (!(pi < eps / 2.0))
        throw PreconditionViolation("eps/2", format_violation("base diagonal pi residual", pi, "eps/2", eps / 2.0));
    }

  // ||alpha||_p >= 1 may be assumed; the larger value only tightens targets.
  const double alpha_scale = std::max(1.0, alpha_norm);
  Schedule schedule;
  schedule.construction = "central-compact";
  schedule.c = c;
  schedule.M = alpha_norm;
  schedule.L = M_K;
  const double approx_target = eps / (8.0 * c * alpha_scale);
  schedule.approximation_tolerance = approx_target;
  const Cover approx_cover = cover_for_oscillation(space, test_set, approx_target);
  schedule.approximation_radius = approx_cover.radius;
  const PartitionOfUnity approx_pou = partition_of_unity(approx_cover, cxa->field());
  const std::size_t n = approx_pou.size();
  schedule.N = n;

  // ||f_k u - u f_k||_p < eps/(2 n M_K ||alpha||), reached through 4c osc(f_k).
  const double commutator_target = safe_ratio(eps, 2.0 * static_cast<double>(n) * M_K * alpha_scale);
  schedule.oscillation_target = commutator_target / (4.0 * c);
  const Cover cover = cover_for_oscillation(space, approx_pou.functions, schedule.oscillation_target);
  schedule.radius = cover.radius;
  const PartitionOfUnity pou = partition_of_unity(cover, cxa->field());
  const DecomposedTensor u = sqrt_diagonal_u(pou);
  DecomposedTensor U = mixed_tensor(u, alpha, cxa);
  const double u_bound = grothendieck_bound(u, k);
  const double norm_bound = u_bound * alpha_norm;

  std::vector<double> f_commutators;
  f_commutators.reserve(n);
  for (const auto& f : approx_pou.functions) f_commutators.push_back(commutator_bound_u(f, pou, u, k));

  const AlgebraElement pi_U = product_map(U);
  double cancellation = 0.0;
  std::vector<ElementResidual> elements;
  for (const auto& a : test_set) {
    // Coefficients of sum_k T(f_k u, a_k alpha - alpha a_k), assembled through
    // the bilinear structure coeff(T(w, g)) = coeff(w) kron coeff(g).
    Matrix block = Matrix::Zero(static_cast<Eigen::Index>(cxa->dim()), static_cast<Eigen::Index>(cxa->dim()));
    AlgebraElement approx = zero(cxa);
    double alpha_side = 0.0;
    double f_side = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
      const AlgebraElement& f = approx_pou.functions[t];
      const AlgebraElement a_k = evaluation_hom(a, approx_cover.centers[t]);
      approx = approx + scalar_times(cxa, f, a_k);
      const DecomposedTensor gamma = commutator(a_k, alpha);
      block += kronecker(act_left(f, u).coefficient_tensor(), gamma.coefficient_tensor());
      alpha_side += f.norm() * u_bound * norm_upper(gamma);
      f_side += f_commutators[t] * a_k.norm() * alpha_norm;
    }
    cancellation = std::max(cancellation, block.cwiseAbs().maxCoeff());
    const double chain = alpha_side + f_side + 2.0 * norm_bound * norm(a - approx);
    const double direct = norm_upper(commutator(a, U));
    elements.push_back({std::min(chain, direct), pi_residual(pi_U, a)});
  }

  DiagonalCertificate cert{eps, std::move(U), norm_bound, std::move(elements), schedule, cover.center_labels(),
                           false, cancellation};
  cert.passed = all_below(cert.elements, eps);
  return cert;
}

DecomposedTensor pushforward_diagonal(const DecomposedTensor& U, std::size_t x0) {
  const auto& vv = U.left_algebra()->vector_valued();
  require_same_algebra(*U.left_algebra(), *U.right_algebra(), "pushforward_diagonal");
  if (x0 >= vv.space->size()) throw InvalidArgument("pushforward point out of range");
  DecomposedTensor out(vv.base, vv.base);
  for (const auto& t : U.terms()) out.add_term(evaluation_hom(t.left, x0), evaluation_hom(t.right, x0));
  return out;
}

DiagonalCertificate verify_diagonal(const DecomposedTensor& U, const std::vector<AlgebraElement>& test_set,
                                    double eps) {
  if (!(eps > 0.0)) throw InvalidArgument("eps must be positive");
  require_same_algebra(*U.left_algebra(), *U.right_algebra(), "verify_diagonal");
  require_elements_in(test_set, U.left_algebra(), "verify_diagonal test set");
  const AlgebraElement pi_U = product_map(U);
  std::vector<ElementResidual> elements;
  elements.reserve(test_set.size());
  for (const auto& a : test_set) elements.push_back({norm_upper(commutator(a, U)), pi_residual(pi_U, a)});
  Schedule schedule;
  schedule.construction = "verify";
  DiagonalCertificate cert{eps, U, norm_upper(U), std::move(elements), schedule, {}, false, std::nullopt};
  cert.passed = all_below(cert.elements, eps);
  return cert;
}

}  // namespace amenlab
