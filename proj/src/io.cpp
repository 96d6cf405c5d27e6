#include "amenlab/io.hpp"

#include <string>

namespace amenlab::io {

namespace {

const json& require(const json& spec, const char* key, const char* context) {
  if (!spec.is_object() || !spec.contains(key))
    throw SpecError(std::string(context) + " spec is missing \"" + key + "\"");
  return spec.at(key);
}

std::size_t require_count(const json& spec, const char* key, const char* context) {
  const json& v = require(spec, key, context);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw SpecError(std::string(context) + " \"" + key + "\" must be a positive integer");
  return v.get<std::size_t>();
}

ScalarField field_of(const json& spec, std::optional<ScalarField> override_field) {
  if (override_field) return *override_field;
  if (!spec.contains("field")) return ScalarField::kComplex;
  if (!spec.at("field").is_string()) throw SpecError("\"field\" must be \"real\" or \"complex\"");
  try {
    return parse_scalar_field(spec.at("field").get<std::string>());
  } catch (const InvalidArgument& e) {
    throw SpecError(e.what());
  }
}

Scalar scalar_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw SpecError("coefficient must be a number or a [re, im] pair");
}

json scalar_to_json(Scalar s, ScalarField field) {
  if (field == ScalarField::kReal) return s.real();
  return json::array({s.real(), s.imag()});
}

}  // namespace

SpaceHandle parse_space(const json& spec) {
  const json& kind_j = require(spec, "kind", "space");
  if (!kind_j.is_string()) throw SpecError("space \"kind\" must be a string");
  const std::string kind = kind_j.get<std::string>();
  try {
    if (kind == "grid") {
      const std::size_t n = require_count(spec, "n", "grid");
      const json& spacing = require(spec, "spacing", "grid");
      if (!spacing.is_number()) throw SpecError("grid \"spacing\" must be a number");
      return make_grid_space(n, spacing.get<double>());
    }
    if (kind == "metric") {
      const auto labels = require(spec, "labels", "metric").get<std::vector<std::string>>();
      const auto rows = require(spec, "dist", "metric").get<std::vector<std::vector<double>>>();
      const auto n = static_cast<Eigen::Index>(labels.size());
      if (static_cast<Eigen::Index>(rows.size()) != n) throw SpecError("metric \"dist\" must be labels x labels");
      RealMatrix dist(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
          throw SpecError("metric \"dist\" must be labels x labels");
        for (Eigen::Index j = 0; j < n; ++j) dist(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      return make_metric_space(labels, dist);
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("space spec: ") + e.what());
  }
  throw SpecError("unknown space kind \"" + kind + "\"");
}

AlgebraHandle parse_algebra(const json& spec, std::optional<ScalarField> field_override) {
  const json& kind_j = require(spec, "kind", "algebra");
  if (!kind_j.is_string()) throw SpecError("algebra \"kind\" must be a string");
  const std::string kind = kind_j.get<std::string>();
  const ScalarField field = field_of(spec, field_override);
  try {
    if (kind == "sup") return make_sup_algebra(require_count(spec, "n", "sup"), field);
    if (kind == "matrix") return make_matrix_algebra(require_count(spec, "n", "matrix"), field);
    if (kind == "truncpoly") return make_truncated_poly_algebra(field);
    if (kind == "group") {
      if (spec.contains("cayley"))
        return make_group_algebra(spec.at("cayley").get<std::vector<std::vector<std::size_t>>>(), field);
      return make_group_algebra(cyclic_group_table(require_count(spec, "n", "group")), field);
    }
    if (kind == "vector_valued") {
      const SpaceHandle space = parse_space(require(spec, "space", "vector_valued"));
      json base = require(spec, "base", "vector_valued");
      // The base inherits the outer field unless it names its own.
      const std::optional<ScalarField> base_field =
          field_override ? field_override
                         : (base.contains("field") ? std::nullopt : std::optional<ScalarField>(field));
      return make_vector_valued(space, parse_algebra(base, base_field));
    }
  } catch (const json::exception& e) {
    throw SpecError(std::string("algebra spec: ") + e.what());
  }
  throw SpecError("unknown algebra kind \"" + kind + "\"");
}

json vector_to_json(const Vector& v, ScalarField field) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(scalar_to_json(v[i], field));
  return out;
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw SpecError("coefficient vector must be an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = scalar_from_json(j[i]);
  return v;
}

json matrix_to_json(const Matrix& m, ScalarField field) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose(), field));
  return out;
}

json element_to_json(const AlgebraElement& a) { return vector_to_json(a.coeffs(), a.algebra()->field()); }

AlgebraElement element_from_json(const json& j, const AlgebraHandle& algebra) {
  try {
    return {algebra, vector_from_json(j)};
  } catch (const InvalidArgument& e) {
    throw SpecError(e.what());
  }
}

json tensor_to_json(const DecomposedTensor& u) {
  json out = json::array();
  for (const auto& t : u.terms()) out.push_back(json::array({element_to_json(t.left), element_to_json(t.right)}));
  return out;
}

DecomposedTensor tensor_from_json(const json& j, const AlgebraHandle& left, const AlgebraHandle& right) {
  if (!j.is_array()) throw SpecError("tensor must be an array of [left, right] pairs");
  DecomposedTensor u(left, right);
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) throw SpecError("tensor term must be a [left, right] pair");
    u.add_term(element_from_json(pair[0], left), element_from_json(pair[1], right));
  }
  return u;
}

json certificate_to_json(const DiagonalCertificate& cert) {
  const Schedule& s = cert.schedule;
  json schedule = {{"construction", s.construction}, {"N", s.N},           {"L", s.L},
                   {"M", s.M},                       {"c", s.c},           {"radius", s.radius},
                   {"oscillation_target", s.oscillation_target}};
  if (s.approximation_tolerance) schedule["approximation_tolerance"] = *s.approximation_tolerance;
  if (s.approximation_radius) schedule["approximation_radius"] = *s.approximation_radius;
  json elements = json::array();
  for (const auto& e : cert.elements)
    elements.push_back({{"commutator_bound", e.commutator_bound}, {"pi_residual", e.pi_residual}});
  json out = {{"eps", cert.eps},           {"norm_bound", cert.norm_bound}, {"schedule", schedule},
              {"elements", elements},      {"pass", cert.passed},           {"centers", cert.centers},
              {"terms", cert.U.size()}};
  if (cert.cancellation_block) out["cancellation_block"] = *cert.cancellation_block;
  return out;
}

json derivation_report(const json& algebra_spec, const AlgebraHandle& algebra) {
  const DerivationSpace space = derivation_space(algebra);
  json out = {{"algebra", algebra_spec}, {"derivation_dim", space.dim}};
  out["weakly_amenable"] = algebra->is_commutative() ? json(space.dim == 0) : json(nullptr);
  out["witness"] = space.dim == 0 ? json(nullptr)
                                  : matrix_to_json(normalize_witness(space.basis.front()), algebra->field());
  return out;
}

json transfer_report_to_json(const TransferReport& report, ScalarField field) {
  json out = {{"base_dim", report.base_dim},
              {"lifted_dim", report.lifted_dim},
              {"base_weakly_amenable", report.base_weakly_amenable},
              {"lifted_weakly_amenable", report.lifted_weakly_amenable},
              {"witness_leibniz_defect", report.witness_leibniz_defect},
              {"consistent", report.consistent}};
  out["lifted_witness"] = report.lifted_witness ? matrix_to_json(*report.lifted_witness, field) : json(nullptr);
  return out;
}

}  // namespace amenlab::io
