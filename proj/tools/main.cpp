// tripartite: command-line driver for three-qubit entanglement classification.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace tripartite;

namespace {

struct CommonOptions {
  std::vector<std::string> named;
  std::vector<std::string> state_files;
  std::vector<std::uint64_t> random_seeds;
  std::string random_kind = "pure";
  std::string mode = "exact";
  std::optional<std::uint64_t> shots;
  std::optional<double> depolarize;
  std::optional<double> fidelity_target;
  double tol_g = Thresholds{}.zero_tol_g;
  double tol_tangle = Thresholds{}.zero_tol_tangle;
  std::uint64_t seed = 2018;
  std::string out;
  std::string format = "csv";
  int repeats = 1;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--named", o.named, "Named states (GHZ, W, WWbar, BS1, BS2, BS3, Sep) or 'all'")->delimiter(',');
  cmd->add_option("--state", o.state_files, "JSON state file (repeatable)")->check(CLI::ExistingFile);
  cmd->add_option("--random-seeds", o.random_seeds, "Seeds for random states")->delimiter(',');
  cmd->add_option("--random-kind", o.random_kind, "Random state family")->check(CLI::IsMember({"pure", "generic"}));
  cmd->add_option("--mode", o.mode, "Measurement mode")->check(CLI::IsMember({"exact", "circuit", "sampled"}));
  cmd->add_option("--shots", o.shots, "Shots per Pauli string (sampled mode)")->check(CLI::PositiveNumber);
  auto* dep = cmd->add_option("--depolarize", o.depolarize, "Depolarizing strength p")->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--fidelity-target", o.fidelity_target, "Target fidelity; sets p = 8(1-F)/7")
      ->check(CLI::Range(0.125, 1.0))
      ->excludes(dep);
  cmd->add_option("--tol-g", o.tol_g, "Zero tolerance for G_l");
  cmd->add_option("--tol-tangle", o.tol_tangle, "Zero tolerance for the 3-tangle");
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--out", o.out, "Output path (default stdout)");
  cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

cli::RunConfig build_config(const CommonOptions& o) {
  cli::RunConfig cfg;
  for (const auto& n : o.named) {
    if (n == "all") {
      for (NamedState tag : kNamedStates) cfg.inputs.push_back({to_string(tag), named(tag)});
      continue;
    }
    const auto tag = parse_named_state(n);
    if (!tag) throw StateFormatError("unknown named state '" + n + "'");
    cfg.inputs.push_back({n, named(*tag)});
  }
  for (const auto& path : o.state_files)
    for (auto& s : load_state_file(path)) cfg.inputs.push_back(std::move(s));
  for (auto seed : o.random_seeds) {
    const std::string label = o.random_kind + ":" + std::to_string(seed);
    cfg.inputs.push_back({label, o.random_kind == "generic" ? generic(random_generic(seed)) : random_pure(seed)});
  }

  cfg.mode = o.mode == "circuit"   ? MeasurementMode::Kind::circuit
             : o.mode == "sampled" ? MeasurementMode::Kind::sampled
                                   : MeasurementMode::Kind::exact;
  if (cfg.mode == MeasurementMode::Kind::sampled && !o.shots)
    throw CLI::ValidationError("--shots", "sampled mode needs --shots");
  if (cfg.mode != MeasurementMode::Kind::sampled && o.shots && o.mode != "exact")
    throw CLI::ValidationError("--shots", "--shots only applies to sampled mode");

  cfg.noise.shots = o.shots;
  cfg.noise.seed = o.seed;
  if (o.depolarize) cfg.noise.depolarizing_p = *o.depolarize;
  if (o.fidelity_target) cfg.noise.depolarizing_p = depolarizing_for_fidelity(*o.fidelity_target);
  cfg.thresholds = {o.tol_g, o.tol_tangle};
  cfg.thresholds.validate();
  cfg.out = o.out;
  cfg.format = o.format == "json" ? cli::Format::json : cli::Format::csv;
  cfg.repeats = o.repeats;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Three-qubit pure-state entanglement classification"};
  app.require_subcommand(1);

  CommonOptions classify_opts;
  auto* classify_cmd = app.add_subcommand("classify", "Classify states into the six SLOCC classes");
  add_common(classify_cmd, classify_opts);

  CommonOptions negativity_opts;
  auto* negativity_cmd = app.add_subcommand("negativity", "Negativity of ideal and tomographically reconstructed states");
  add_common(negativity_cmd, negativity_opts);
  negativity_cmd->add_option("--repeats", negativity_opts.repeats, "Tomography repetitions per state")
      ->check(CLI::PositiveNumber);

  cli::ReproduceConfig reproduce_cfg;
  std::string reproduce_format = "csv";
  double reproduce_tol_g = Thresholds{}.zero_tol_g, reproduce_tol_tangle = Thresholds{}.zero_tol_tangle;
  auto* reproduce_cmd = app.add_subcommand("reproduce", "Regenerate the classification and negativity tables");
  reproduce_cmd->add_option("figure", reproduce_cfg.figure, "table1, table2 or fig3")
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "fig3"}));
  reproduce_cmd->add_option("--seed", reproduce_cfg.seed, "Master seed");
  reproduce_cmd->add_option("--shots", reproduce_cfg.shots, "Shots per Pauli string")->check(CLI::PositiveNumber);
  reproduce_cmd->add_option("--repeats", reproduce_cfg.repeats, "Tomography repetitions (table2)")
      ->check(CLI::PositiveNumber);
  reproduce_cmd->add_option("--tol-g", reproduce_tol_g, "Zero tolerance for G_l");
  reproduce_cmd->add_option("--tol-tangle", reproduce_tol_tangle, "Zero tolerance for the 3-tangle");
  reproduce_cmd->add_option("--out", reproduce_cfg.out, "Output path (default stdout)");
  reproduce_cmd->add_option("--format", reproduce_format, "Output format")->check(CLI::IsMember({"json", "csv"}));

  cli::SelftestConfig selftest_cfg;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in oracle equivalence checks");
  selftest_cmd->add_option("--seed", selftest_cfg.seed, "Seed for the random ensembles");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitUsage;
  }

  try {
    if (*classify_cmd) return cli::cmd_classify(build_config(classify_opts), std::cout, std::cerr);
    if (*negativity_cmd) return cli::cmd_negativity(build_config(negativity_opts), std::cout, std::cerr);
    if (*reproduce_cmd) {
      reproduce_cfg.format = reproduce_format == "json" ? cli::Format::json : cli::Format::csv;
      reproduce_cfg.thresholds = {reproduce_tol_g, reproduce_tol_tangle};
      reproduce_cfg.thresholds.validate();
      return cli::cmd_reproduce(reproduce_cfg, std::cout, std::cerr);
    }
    if (*selftest_cmd) return cli::cmd_selftest(selftest_cfg, std::cout);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const StateFormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitInvariant;
  }
  return cli::kExitUsage;
}
