#include "amenlab/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "amenlab/projective_lp.hpp"
#include "amenlab/random.hpp"

namespace amenlab {

namespace {

using io::json;
using io::SpecError;

constexpr const char* kVersion = "0.1.0";
constexpr double kLpSlack = 1e-9;

std::string fmt(const char* pattern, double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, value);
  return buf;
}

std::uint64_t seed_of(const json& j, std::uint64_t fallback) {
  if (!j.is_object() || !j.contains("seed")) return fallback;
  const json& s = j.at("seed");
  if (!s.is_number_integer() || (!s.is_number_unsigned() && s.get<long long>() < 0)) throw SpecError("\"seed\" must be a non-negative integer");
  return j.at("seed").get<std::uint64_t>();
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw SpecError(std::string("\"") + key + "\": " + e.what());
  }
}

struct TestSet {
  std::vector<AlgebraElement> elements;
  /// Present when every element comes with an elementary decomposition.
  std::optional<std::vector<ElementaryFunction>> elementary;
};

AlgebraHandle base_of(const AlgebraHandle& target) {
  return target->is_vector_valued() ? target->vector_valued().base : target;
}

TestSet build_test_set(const json& gen, const AlgebraHandle& target, std::uint64_t default_seed) {
  if (!gen.is_object() || !gen.contains("kind")) throw SpecError("test_functions needs a \"kind\"");
  const std::string kind = gen.at("kind").get<std::string>();
  const std::uint64_t seed = seed_of(gen, default_seed);
  Rng rng(seed);
  const AlgebraHandle base = base_of(target);
  const bool lifted = target->is_vector_valued();
  TestSet out;

  if (kind == "constant") {
    std::vector<AlgebraElement> values;
    if (gen.contains("values")) {
      for (const auto& v : gen.at("values")) values.push_back(io::element_from_json(v, base));
    } else {
      const auto count = get_or<std::size_t>(gen, "count", 5);
      for (std::size_t i = 0; i < count; ++i) {
        AlgebraElement a = random_element(base, rng);
        values.push_back(Scalar(1.0 / a.norm()) * a);
      }
    }
    if (!lifted) {
      out.elements = values;
      return out;
    }
    const AlgebraHandle scalars = scalar_functions(target);
    const AlgebraElement one = unit(scalars);
    out.elementary.emplace();
    for (const auto& a : values) {
      out.elements.push_back(constant_function(target, a));
      out.elementary->push_back({ElementaryTerm{one, a}});
    }
    return out;
  }
  if (!lifted) throw SpecError("test_functions kind \"" + kind + "\" needs a space");
  if (kind == "lipschitz-random") {
    const auto count = get_or<std::size_t>(gen, "count", 5);
    const auto lipschitz = get_or<double>(gen, "lipschitz", 1.0);
    const auto anchors = get_or<std::size_t>(gen, "anchors", 3);
    if (!(lipschitz >= 0.0)) throw SpecError("\"lipschitz\" must be non-negative");
    for (std::size_t i = 0; i < count; ++i)
      out.elements.push_back(random_lipschitz_function(target, rng, lipschitz, anchors));
    return out;
  }
  if (kind == "elementary") {
    const AlgebraHandle scalars = scalar_functions(target);
    out.elementary.emplace();
    if (gen.contains("functions")) {
      for (const auto& fn : gen.at("functions")) {
        ElementaryFunction terms;
        for (const auto& t : fn) {
          if (!t.contains("f") || !t.contains("a")) throw SpecError("elementary term needs \"f\" and \"a\"");
          terms.push_back({io::element_from_json(t.at("f"), scalars), io::element_from_json(t.at("a"), base)});
        }
        out.elementary->push_back(std::move(terms));
      }
    } else {
      const auto count = get_or<std::size_t>(gen, "count", 5);
      const auto terms = get_or<std::size_t>(gen, "terms", 2);
      for (std::size_t i = 0; i < count; ++i) out.elementary->push_back(random_elementary_function(target, rng, terms));
    }
    for (const auto& fn : *out.elementary) out.elements.push_back(reconstruct(target, fn));
    return out;
  }
  throw SpecError("unknown test_functions kind \"" + kind + "\"");
}

json metadata(const ExperimentSpec& spec) {
  json meta = {{"command", spec.command},
               {"seed", spec.seed},
               {"field", to_string(spec.field)},
               {"eps", spec.eps},
               {"version", kVersion}};
  if (spec.test_functions.is_object()) {
    meta["test_functions"] = spec.test_functions;
    meta["test_function_seed"] = seed_of(spec.test_functions, spec.seed);
  }
  return meta;
}

std::string certificate_table(const DiagonalCertificate& cert, const char* title) {
  std::ostringstream t;
  t << title << " (" << cert.schedule.construction << ")  eps=" << fmt("%.3e", cert.eps)
    << "  norm_bound=" << fmt("%.6f", cert.norm_bound) << "  terms=" << cert.U.size() << "\n";
  t << "  #   commutator_bound   pi_residual\n";
  for (std::size_t i = 0; i < cert.elements.size(); ++i)
    t << "  " << i << "   " << fmt("%.6e", cert.elements[i].commutator_bound) << "       "
      << fmt("%.6e", cert.elements[i].pi_residual) << "\n";
  if (cert.cancellation_block) t << "  cancellation_block=" << fmt("%.3e", *cert.cancellation_block) << "\n";
  t << "  " << (cert.passed ? "PASS" : "FAIL") << "\n";
  return t.str();
}

DecomposedTensor base_diagonal_for(const ExperimentSpec& spec, const AlgebraHandle& algebra) {
  if (spec.extra.contains("base_diagonal"))
    return io::tensor_from_json(spec.extra.at("base_diagonal"), algebra, algebra);
  auto alpha = exact_diagonal(algebra);
  if (!alpha) throw UnsupportedInstance("no exact diagonal known for " + algebra->descriptor());
  return *alpha;
}

RunResult run_build_diagonal(const ExperimentSpec& spec) {
  const AlgebraHandle algebra = io::parse_algebra(spec.algebra, spec.field);
  const SpaceHandle space = io::parse_space(spec.space);
  const AlgebraHandle cxa = make_vector_valued(space, algebra);
  const TestSet F = build_test_set(spec.test_functions, cxa, spec.seed);
  const DecomposedTensor alpha = base_diagonal_for(spec, algebra);
  const GrothendieckConstant k = GrothendieckConstant::for_field(spec.field);

  const DiagonalCertificate cert = [&] {
    if (spec.construction == "central") return lift_central_compact(F.elements, alpha, spec.eps, space, k);
    DiagonalRequest request{spec.eps, F.elements, alpha, 0.0, false};
    if (spec.construction == "case1") {
      if (!F.elementary) throw SpecError("construction case1 needs elementary or constant test functions");
      return lift_case1(request, *F.elementary, space, k);
    }
    if (spec.construction != "case2") throw SpecError("unknown construction \"" + spec.construction + "\"");
    return lift_case2(request, space, k);
  }();
  const DiagonalCertificate check = verify_diagonal(cert.U, F.elements, spec.eps);

  RunResult result;
  result.artifact = io::certificate_to_json(cert);
  result.artifact["verification"] = io::certificate_to_json(check);
  result.artifact["diagonal"] = io::tensor_to_json(cert.U);
  result.table = certificate_table(cert, "certificate") + certificate_table(check, "independent check");
  result.exit_code = cert.passed && check.passed ? kExitPass : kExitFail;
  return result;
}

RunResult run_certify(const ExperimentSpec& spec) {
  const AlgebraHandle algebra = io::parse_algebra(spec.algebra, spec.field);
  const AlgebraHandle target =
      spec.space.is_null() ? algebra : make_vector_valued(io::parse_space(spec.space), algebra);
  if (!spec.extra.contains("diagonal")) throw SpecError("certify needs a \"diagonal\"");
  json diagonal = spec.extra.at("diagonal");
  if (diagonal.is_string()) {
    std::ifstream in(diagonal.get<std::string>());
    if (!in) throw SpecError("cannot open diagonal file " + diagonal.get<std::string>());
    try {
      diagonal = json::parse(in);
    } catch (const json::exception& e) {
      throw SpecError(std::string("diagonal file: ") + e.what());
    }
    // A build-diagonal artifact carries the tensor under "diagonal".
    if (diagonal.is_object() && diagonal.contains("diagonal")) diagonal = diagonal.at("diagonal");
  }
  const DecomposedTensor U = io::tensor_from_json(diagonal, target, target);
  const TestSet F = build_test_set(spec.test_functions, target, spec.seed);
  const DiagonalCertificate cert = verify_diagonal(U, F.elements, spec.eps);

  RunResult result;
  result.artifact = io::certificate_to_json(cert);
  result.table = certificate_table(cert, "certificate");
  result.exit_code = cert.passed ? kExitPass : kExitFail;
  return result;
}

RunResult run_grothendieck_check(const ExperimentSpec& spec) {
  const auto m = get_or<std::size_t>(spec.extra, "m", 3);
  const auto n = get_or<std::size_t>(spec.extra, "n", 3);
  const auto instances = get_or<std::size_t>(spec.extra, "instances", 100);
  const auto terms = get_or<std::size_t>(spec.extra, "terms", 4);
  if (m == 0 || n == 0 || terms == 0) throw SpecError("m, n and terms must be positive");
  const AlgebraHandle left = make_sup_algebra(m, spec.field);
  const AlgebraHandle right = make_sup_algebra(n, spec.field);
  const GrothendieckConstant k = GrothendieckConstant::for_field(spec.field);
  Rng rng(spec.seed);

  json rows = json::array();
  std::ostringstream t;
  t << "grothendieck-check  l_inf^" << m << " (x) l_inf^" << n << "  k=" << fmt("%.3f", k.value) << "\n";
  t << "  #     lp_exact    decomposition_upper   grothendieck_bound\n";
  bool all = true;
  for (std::size_t i = 0; i < instances; ++i) {
    const DecomposedTensor u = random_tensor(left, right, terms, rng);
    const double lp = norm_exact_lp(u);
    const double upper = norm_upper(u);
    const double bound = grothendieck_bound(u, k);
    const bool ok = lp <= bound + kLpSlack && lp <= upper + kLpSlack;
    all = all && ok;
    rows.push_back({{"lp_exact", lp}, {"decomposition_upper", upper}, {"grothendieck_bound", bound}, {"pass", ok}});
    t << "  " << i << "   " << fmt("%.6f", lp) << "   " << fmt("%.6f", upper) << "   " << fmt("%.6f", bound)
      << (ok ? "" : "   FAIL") << "\n";
  }
  t << "  " << (all ? "PASS" : "FAIL") << "\n";

  RunResult result;
  result.artifact = {{"rows", rows}, {"k", k.value}, {"m", m}, {"n", n}, {"terms", terms}, {"pass", all}};
  result.table = t.str();
  result.exit_code = all ? kExitPass : kExitFail;
  return result;
}

RunResult run_derivations(const ExperimentSpec& spec) {
  AlgebraHandle algebra = io::parse_algebra(spec.algebra, spec.field);
  json algebra_spec = spec.algebra;
  if (!spec.space.is_null()) {
    algebra = make_vector_valued(io::parse_space(spec.space), algebra);
    algebra_spec = {{"kind", "vector_valued"}, {"space", spec.space}, {"base", spec.algebra}};
  }
  RunResult result;
  result.artifact = io::derivation_report(algebra_spec, algebra);
  std::ostringstream t;
  t << "derivations  " << algebra->descriptor() << "\n"
    << "  derivation_dim=" << result.artifact["derivation_dim"].get<std::size_t>()
    << "  weakly_amenable=" << result.artifact["weakly_amenable"].dump() << "\n";
  result.table = t.str();
  return result;
}

RunResult run_transfer_check(const ExperimentSpec& spec) {
  const AlgebraHandle algebra = io::parse_algebra(spec.algebra, spec.field);
  if (spec.space.is_null()) throw SpecError("transfer-check needs a space");
  const SpaceHandle space = io::parse_space(spec.space);
  const TransferReport report = weak_amenability_transfer_check(space, algebra);
  RunResult result;
  result.artifact = io::transfer_report_to_json(report, spec.field);
  std::ostringstream t;
  t << "transfer-check  A=" << algebra->descriptor() << "  |X|=" << space->size() << "\n"
    << "  dim Der(A, A*)=" << report.base_dim << "  dim Der(C(X,A), C(X,A)*)=" << report.lifted_dim << "\n"
    << "  witness_leibniz_defect=" << fmt("%.3e", report.witness_leibniz_defect) << "\n"
    << "  " << (report.consistent ? "PASS" : "FAIL") << "\n";
  result.table = t.str();
  result.exit_code = report.consistent ? kExitPass : kExitFail;
  return result;
}

void write_artifacts(const ExperimentSpec& spec, RunResult& result) {
  std::filesystem::create_directories(spec.output);
  const std::string stem = spec.command == "build-diagonal" || spec.command == "certify" ? "certificate"
                           : spec.command == "grothendieck-check"                        ? "grothendieck"
                           : spec.command == "derivations"                               ? "report"
                                                                                         : "transfer";
  const auto json_path = spec.output / (stem + ".json");
  const auto table_path = spec.output / (stem + ".txt");
  std::ofstream(json_path) << result.artifact.dump(2) << "\n";
  std::ofstream(table_path) << result.table;
  result.files = {json_path, table_path};
}

}  // namespace

std::vector<AlgebraElement> generate_test_functions(const json& generator, const AlgebraHandle& target,
                                                    std::uint64_t default_seed) {
  return build_test_set(generator, target, default_seed).elements;
}

ExperimentSpec parse_experiment(const json& doc, const SpecOverrides& overrides) {
  if (!doc.is_object()) throw SpecError("experiment spec must be a JSON object");
  ExperimentSpec spec;
  spec.command = get_or<std::string>(doc, "command", "");
  static const std::vector<std::string> kCommands = {"build-diagonal", "certify", "grothendieck-check",
                                                     "derivations", "transfer-check"};
  if (std::find(kCommands.begin(), kCommands.end(), spec.command) == kCommands.end())
    throw SpecError("unknown command \"" + spec.command + "\"");
  spec.algebra = doc.value("algebra", json());
  spec.space = doc.value("space", json());
  spec.test_functions = doc.value("test_functions", json());
  spec.eps = overrides.eps ? *overrides.eps : get_or<double>(doc, "eps", 1e-2);
  if (!(spec.eps > 0.0)) throw SpecError("eps must be positive");
  if (overrides.field) {
    spec.field = *overrides.field;
  } else if (doc.contains("field")) {
    try {
      spec.field = parse_scalar_field(get_or<std::string>(doc, "field", "complex"));
    } catch (const InvalidArgument& e) {
      throw SpecError(e.what());
    }
  } else if (spec.algebra.is_object() && spec.algebra.contains("field")) {
    spec.field = parse_scalar_field(spec.algebra.at("field").get<std::string>());
  } else if (spec.command == "grothendieck-check") {
    // The exact LP only exists for real scalars.
    spec.field = ScalarField::kReal;
  }
  spec.seed = overrides.seed ? *overrides.seed : seed_of(doc, 0);
  if (overrides.seed && spec.test_functions.is_object() && spec.test_functions.contains("seed"))
    spec.test_functions["seed"] = *overrides.seed;
  spec.output = overrides.output ? *overrides.output : std::filesystem::path(get_or<std::string>(doc, "output", ""));
  spec.construction = get_or<std::string>(doc, "construction", "case2");
  spec.extra = doc;
  for (const char* key : {"command", "algebra", "space", "eps", "test_functions", "field", "output", "seed",
                          "construction"})
    spec.extra.erase(key);

  const bool needs_algebra = spec.command != "grothendieck-check";
  if (needs_algebra && !spec.algebra.is_object()) throw SpecError(spec.command + " needs an \"algebra\"");
  const bool needs_space = spec.command == "build-diagonal" || spec.command == "transfer-check";
  if (needs_space && !spec.space.is_object()) throw SpecError(spec.command + " needs a \"space\"");
  const bool needs_tests = spec.command == "build-diagonal" || spec.command == "certify";
  if (needs_tests && !spec.test_functions.is_object()) throw SpecError(spec.command + " needs \"test_functions\"");
  return spec;
}

RunResult run(const ExperimentSpec& spec) {
  RunResult result;
  try {
    if (spec.command == "build-diagonal")
      result = run_build_diagonal(spec);
    else if (spec.command == "certify")
      result = run_certify(spec);
    else if (spec.command == "grothendieck-check")
      result = run_grothendieck_check(spec);
    else if (spec.command == "derivations")
      result = run_derivations(spec);
    else if (spec.command == "transfer-check")
      result = run_transfer_check(spec);
    else
      throw SpecError("unknown command \"" + spec.command + "\"");
  } catch (const SpecError& e) {
    result = {kExitParseError, json{{"error", e.what()}}, {}, {}, e.what()};
  } catch (const PreconditionViolation& e) {
    result = {kExitPrecondition, json{{"error", e.what()}, {"constant", e.constant()}}, {}, {},
              "precondition " + e.constant() + " violated: " + e.what()};
  } catch (const Error& e) {
    result = {kExitPrecondition, json{{"error", e.what()}}, {}, {}, e.what()};
  }
  result.artifact["metadata"] = metadata(spec);
  if (!spec.output.empty()) write_artifacts(spec, result);
  return result;
}

}  // namespace amenlab
