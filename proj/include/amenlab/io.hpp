#pragma once

#include <nlohmann/json.hpp>
#include <optional>

#include "amenlab/derivations.hpp"
#include "amenlab/diagonal.hpp"

namespace amenlab::io {

using json = nlohmann::json;

/// Thrown for malformed specification documents.
class SpecError : public Error {
 public:
  using Error::Error;
};

/// {"kind": "grid", "n": int, "spacing": float} or
/// {"kind": "metric", "labels": [...], "dist": [[float]]}
SpaceHandle parse_space(const json& spec);

/// {"kind": "sup"|"matrix"|"group"|"truncpoly"|"vector_valued", "n": int,
///  "cayley": [[int]], "space": <space>, "base": <algebra>, "field": ...}.
/// `field_override`, when set, replaces every "field" entry.
AlgebraHandle parse_algebra(const json& spec, std::optional<ScalarField> field_override = std::nullopt);

/// Coefficients as numbers in real mode and [re, im] pairs in complex mode.
json vector_to_json(const Vector& v, ScalarField field);
Vector vector_from_json(const json& j);
json matrix_to_json(const Matrix& m, ScalarField field);

json element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const json& j, const AlgebraHandle& algebra);

/// Array of [left coefficients, right coefficients] pairs.
json tensor_to_json(const DecomposedTensor& u);
DecomposedTensor tensor_from_json(const json& j, const AlgebraHandle& left, const AlgebraHandle& right);

/// {"eps", "norm_bound", "schedule": {"N", "L", "M", "c", "radius", ...},
///  "elements": [{"commutator_bound", "pi_residual"}], "pass", "centers"}
json certificate_to_json(const DiagonalCertificate& cert);

/// {"algebra": spec, "derivation_dim", "weakly_amenable": bool|null,
///  "witness": matrix|null}
json derivation_report(const json& algebra_spec, const AlgebraHandle& algebra);

json transfer_report_to_json(const TransferReport& report, ScalarField field);

}  // namespace amenlab::io
