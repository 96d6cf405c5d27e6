#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "amenlab/experiment.hpp"

namespace {

const char* kSubcommands[] = {"build-diagonal", "certify", "grothendieck-check", "derivations", "transfer-check"};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"amenlab: approximate diagonals, projective norms and derivation spaces"};
  app.require_subcommand(1);

  std::string spec_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  std::string field;
  double eps = 0.0;
  for (const char* name : kSubcommands) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--spec", spec_path, "experiment spec (JSON)")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--seed", seed, "replaces every seed in the spec");
    sub->add_option("--field", field, "scalar field")->check(CLI::IsMember({"real", "complex"}));
    sub->add_option("--eps", eps, "tolerance")->check(CLI::PositiveNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : amenlab::kExitParseError;
  }
  CLI::App* sub = app.get_subcommands().front();

  amenlab::SpecOverrides overrides;
  if (sub->count("--out")) overrides.output = out_dir;
  if (sub->count("--seed")) overrides.seed = seed;
  if (sub->count("--field")) overrides.field = amenlab::parse_scalar_field(field);
  if (sub->count("--eps")) overrides.eps = eps;

  amenlab::ExperimentSpec spec;
  try {
    std::ifstream in(spec_path);
    if (!in) throw amenlab::io::SpecError("cannot open spec file " + spec_path);
    amenlab::io::json doc;
    try {
      doc = amenlab::io::json::parse(in);
    } catch (const amenlab::io::json::exception& e) {
      throw amenlab::io::SpecError(std::string("spec is not valid JSON: ") + e.what());
    }
    // The subcommand names the command; a spec may omit it.
    if (doc.is_object()) {
      if (doc.contains("command") && doc["command"] != sub->get_name())
        throw amenlab::io::SpecError("spec command \"" + doc["command"].dump() + "\" does not match subcommand " +
                                     sub->get_name());
      doc["command"] = sub->get_name();
    }
    spec = amenlab::parse_experiment(doc, overrides);
  } catch (const amenlab::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return amenlab::kExitParseError;
  }

  const amenlab::RunResult result = amenlab::run(spec);
  if (!result.error.empty()) std::cerr << "error: " << result.error << "\n";
  std::cout << result.table;
  for (const auto& f : result.files) std::cout << "wrote " << f.string() << "\n";
  std::cout << "seed " << spec.seed << "\n";
  return result.exit_code;
}
