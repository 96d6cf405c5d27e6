#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "amenlab/io.hpp"

namespace amenlab {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitParseError = 2;
inline constexpr int kExitPrecondition = 3;

/// One batch run. Unset optional sections fall back to per-command defaults.
struct ExperimentSpec {
  std::string command;
  io::json algebra;
  io::json space;
  double eps = 1e-2;
  /// {"kind": "constant", "values": [[...]] | "count": int, "seed": int}
  /// {"kind": "lipschitz-random", "seed": int, "lipschitz": float, "count": int}
  /// {"kind": "elementary", "functions": [[{"f": [...], "a": [...]}]] | "count", "terms", "seed"}
  io::json test_functions;
  ScalarField field = ScalarField::kComplex;
  std::filesystem::path output;
  std::uint64_t seed = 0;
  /// build-diagonal: "case2" (default), "case1" or "central".
  std::string construction = "case2";
  /// Everything else in the document (diagonal for certify, sizes for
  /// grothendieck-check).
  io::json extra;
};

/// Command-line values that replace the corresponding spec entries.
struct SpecOverrides {
  std::optional<std::filesystem::path> output;
  std::optional<std::uint64_t> seed;
  std::optional<ScalarField> field;
  std::optional<double> eps;
};

/// Throws io::SpecError on malformed documents. A seed override replaces
/// every seed in the document, including generator seeds.
ExperimentSpec parse_experiment(const io::json& doc, const SpecOverrides& overrides = {});

struct RunResult {
  int exit_code = kExitPass;
  /// The JSON artifact (certificate, table rows or report) with run metadata.
  io::json artifact;
  std::string table;
  std::vector<std::filesystem::path> files;
  std::string error;
};

/// Runs one command. Library precondition violations and unsupported
/// instances become exit 3; spec errors discovered while building inputs
/// become exit 2. Files are written only when `output` is non-empty.
RunResult run(const ExperimentSpec& spec);

/// Test set described by a generator spec, as elements of `target`
/// (C(X, A) when a space is given, A otherwise).
std::vector<AlgebraElement> generate_test_functions(const io::json& generator, const AlgebraHandle& target,
                                                    std::uint64_t default_seed);

}  // namespace amenlab
