#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tripartite/json_io.hpp"
#include "tripartite/tripartite.hpp"

namespace tripartite::cli {

enum class Format { json, csv };

/// Exit codes shared by all verbs.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitInvariant = 4;

struct RunConfig {
  std::vector<StateSpec> inputs;
  MeasurementMode::Kind mode = MeasurementMode::Kind::exact;
  NoiseSpec noise;  // noise.seed is the master seed
  Thresholds thresholds;
  std::string out;  // empty -> stdout
  Format format = Format::csv;
  int repeats = 1;
};

/// One entry of the 27-state reproduction suite.
struct SuiteEntry {
  int index = 0;  // 1-based
  std::string label;
  PureState state;
  double fidelity_target = 1.0;
};

/// Seven named states followed by twenty seeded random slots R1..R20, with
/// the per-state fidelities used to set the depolarizing strength.
std::vector<SuiteEntry> reproduction_suite(Seed master);

/// Formats with six significant digits; |v| < 1e-12 prints as 0.
std::string format_number(double v);

/// Writes via a temporary file and rename; "" or "-" means `fallback`.
void write_output(const std::string& path, const std::string& contents, std::ostream& fallback);

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_negativity(const RunConfig& cfg, std::ostream& out, std::ostream& err);

struct ReproduceConfig {
  std::string figure;  // table1 | table2 | fig3
  Seed seed = 2018;
  std::uint64_t shots = 8192;
  int repeats = 5;
  Thresholds thresholds;
  std::string out;
  Format format = Format::csv;
};

int cmd_reproduce(const ReproduceConfig& cfg, std::ostream& out, std::ostream& err);

struct SelftestConfig {
  Seed seed = 7;
  WitnessPolynomial polynomial = standard_witness_polynomial();
};

/// Runs the oracle-equivalence suites; returns 0 or the 1-based index of the
/// first failing suite.
int cmd_selftest(const SelftestConfig& cfg, std::ostream& out);

}  // namespace tripartite::cli
