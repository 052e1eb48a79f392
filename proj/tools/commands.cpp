#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tripartite::cli {

namespace {

constexpr const char* kClassifySchema = "tripartite-classify/1";
constexpr const char* kNegativitySchema = "tripartite-negativity/1";
constexpr const char* kTable1Schema = "tripartite-table1/1";
constexpr const char* kTable2Schema = "tripartite-table2/1";
constexpr const char* kFig3Schema = "tripartite-fig3/1";

// Per-state fidelities of the seven named states and the twenty random slots.
constexpr std::array<double, 7> kNamedFidelity = {0.96, 0.95, 0.96, 0.98, 0.94, 0.95, 0.98};
constexpr std::array<double, 20> kRandomFidelity = {0.92, 0.93, 0.96, 0.94, 0.93, 0.89, 0.96, 0.93, 0.97, 0.93,
                                                    0.94, 0.95, 0.93, 0.94, 0.98, 0.96, 0.95, 0.90, 0.94, 0.96};

/// Random slot family, cycled so every class shows up in the suite.
PureState random_slot_state(Seed master, int slot) {
  const Seed seed = derive_seed(master, {stream::random_state, static_cast<std::uint64_t>(slot)});
  switch ((slot - 1) % 5) {
    case 0: return random_pure(seed);
    case 1: return generic(random_generic(seed));
    case 2: {
      // a4 = 0 removes the 3-tangle: W-class canonical form
      GenericParams p = random_generic(seed);
      p.a[4] = 0.0;
      double sum = 0.0;
      for (double a : p.a) sum += a * a;
      for (double& a : p.a) a /= std::sqrt(sum);
      return generic(p);
    }
    case 3: return random_biseparable(seed, Bipartition(1 + (slot / 5) % 3));
    default: return random_product(seed);
  }
}

std::string join_csv(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    const std::string& c = cells[i];
    if (c.find_first_of(",\"\n\r") != std::string::npos) {
      line += '"';
      for (char ch : c) line += ch == '"' ? std::string("\"\"") : std::string(1, ch);
      line += '"';
    } else {
      line += c;
    }
  }
  return line + "\r\n";
}

json noise_to_json(const NoiseSpec& n) {
  return {{"depolarizing_p", n.depolarizing_p},
          {"shots", n.shots ? json(*n.shots) : json("exact")},
          {"seed", n.seed}};
}

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
};

Summary summarize(const std::vector<double>& v) {
  Summary s;
  if (v.empty()) return s;
  s.mean = std::accumulate(v.begin(), v.end(), 0.0) / double(v.size());
  if (v.size() > 1) {
    double ss = 0.0;
    for (double x : v) ss += (x - s.mean) * (x - s.mean);
    s.sd = std::sqrt(ss / double(v.size() - 1));
  }
  return s;
}

MeasurementMode mode_for(const RunConfig& cfg, std::size_t state_index) {
  NoiseSpec noise = cfg.noise;
  noise.seed = derive_seed(cfg.noise.seed, {stream::direct, state_index});
  switch (cfg.mode) {
    case MeasurementMode::Kind::exact: return MeasurementMode::exact();
    case MeasurementMode::Kind::circuit: return MeasurementMode::circuit(noise.depolarizing_p);
    case MeasurementMode::Kind::sampled: return MeasurementMode::sampled(noise);
  }
  throw std::invalid_argument("unknown mode");
}

/// Witnesses and <XXX> read off a reconstructed density operator.
struct DerivedValues {
  WitnessTriple g;
  double xxx = 0.0;
  ClassLabel label = ClassLabel::Separable;
};

DerivedValues from_tomograph(const TomographyResult& tomo, const PureState& ideal, const Thresholds& th) {
  const ExpectationTable t = direct_table(tomo.rho_est);
  DerivedValues d;
  d.g = witnesses_from_expectations(t).values;
  d.xxx = t.at(kXXX);
  TangleResult tr;
  tr.xxx_expectation = d.xxx;
  if (is_canonical_generic(ideal)) {
    tr.tangle = d.xxx * d.xxx;
  } else {
    const auto eig = hermitian_eigen(tomo.rho_est.matrix());
    tr.tangle = tangle_oracle(PureState::normalized(eig.vectors.col(kDim - 1)));
    tr.path = TanglePath::oracle;
  }
  d.label = classify(d.g, tr, th).label;
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<SuiteEntry> reproduction_suite(Seed master) {
  std::vector<SuiteEntry> suite;
  int index = 1;
  for (std::size_t i = 0; i < kNamedStates.size(); ++i, ++index)
    suite.push_back({index, to_string(kNamedStates[i]), named(kNamedStates[i]), kNamedFidelity[i]});
  for (int slot = 1; slot <= 20; ++slot, ++index)
    suite.push_back({index, "R" + std::to_string(slot), random_slot_state(master, slot), kRandomFidelity[slot - 1]});
  return suite;
}

std::string format_number(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& contents, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << contents;
    return;
  }
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + tmp.string());
    f << contents;
    if (!f) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

// ---------------------------------------------------------------------------
// classify

int cmd_classify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.inputs.empty()) {
    err << "classify: no input states (use --named, --state or --random-seeds)\n";
    return kExitUsage;
  }
  const bool noisy = cfg.mode != MeasurementMode::Kind::exact;

  json rows = json::array();
  std::string csv = join_csv({"schema", "state", "fidelity", "xxx_theory", "xxx_measured", "g1_theory", "g1_measured",
                              "g2_theory", "g2_measured", "g3_theory", "g3_measured", "tangle_theory",
                              "tangle_measured", "label_theory", "label_measured"});

  for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
    const StateSpec& spec = cfg.inputs[i];
    const ClassificationReport theory = classify_state(spec.state, MeasurementMode::exact(), cfg.thresholds);
    if (theory.label != oracle_label(spec.state, cfg.thresholds)) {
      err << "classify: exact label disagrees with the amplitude oracle for " << spec.label << "\n";
      return kExitInvariant;
    }
    const MeasurementMode mode = mode_for(cfg, i);
    const ClassificationReport measured = noisy ? classify_state(spec.state, mode, cfg.thresholds) : theory;
    const double fid = fidelity(density_of(spec.state), prepared_state(spec.state, mode));

    rows.push_back({{"state", spec.label},
                    {"fidelity", fid},
                    {"theory", to_json(theory)},
                    {"measured", to_json(measured)}});
    csv += join_csv({kClassifySchema, spec.label, format_number(fid),
                     format_number(theory.tangle.xxx_expectation), format_number(measured.tangle.xxx_expectation),
                     format_number(theory.witnesses.g1), format_number(measured.witnesses.g1),
                     format_number(theory.witnesses.g2), format_number(measured.witnesses.g2),
                     format_number(theory.witnesses.g3), format_number(measured.witnesses.g3),
                     format_number(theory.tangle.tangle), format_number(measured.tangle.tangle),
                     to_string(theory.label), to_string(measured.label)});
  }

  if (cfg.format == Format::json) {
    json doc = {{"schema", kClassifySchema},
                {"report_schema", kReportSchema},
                {"mode", noisy ? mode_for(cfg, 0).name() : std::string("exact")},
                {"noise", noise_to_json(cfg.noise)},
                {"thresholds", to_json(cfg.thresholds)},
                {"rows", rows}};
    write_output(cfg.out, doc.dump(2) + "\n", out);
  } else {
    write_output(cfg.out, csv, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// negativity

int cmd_negativity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.inputs.empty()) {
    err << "negativity: no input states (use --named, --state or --random-seeds)\n";
    return kExitUsage;
  }
  if (cfg.repeats < 1) {
    err << "negativity: --repeats must be >= 1\n";
    return kExitUsage;
  }

  json rows = json::array();
  std::string csv = join_csv({"schema", "state", "theory_n1", "theory_n2", "theory_n3", "theory_min",
                              "experimental_n1", "experimental_n2", "experimental_n3", "experimental_min",
                              "experimental_min_sd", "tomography_fidelity"});

  for (std::size_t i = 0; i < cfg.inputs.size(); ++i) {
    const StateSpec& spec = cfg.inputs[i];
    const DensityOperator ideal = density_of(spec.state);
    const NegativityProfile theory = negativity_profile(ideal);

    std::array<std::vector<double>, 3> per_cut;
    std::vector<double> mins, fids;
    json runs = json::array();
    for (int r = 0; r < cfg.repeats; ++r) {
      NoiseSpec noise = cfg.noise;
      noise.seed = derive_seed(cfg.noise.seed, {stream::qst, i, static_cast<std::uint64_t>(r)});
      const TomographyResult tomo = tomograph(ideal, noise);
      const NegativityProfile prof = negativity_profile(tomo.rho_est);
      for (int c = 0; c < 3; ++c) per_cut[c].push_back(prof.per_cut[c]);
      mins.push_back(prof.min);
      fids.push_back(fidelity(ideal, tomo.rho_est));
      if (r == 0) runs.push_back(to_json(tomo, ideal));
    }
    const Summary m = summarize(mins);
    const Summary f = summarize(fids);
    std::array<double, 3> cut_mean{};
    for (int c = 0; c < 3; ++c) cut_mean[c] = summarize(per_cut[c]).mean;

    rows.push_back({{"state", spec.label},
                    {"theory", to_json(theory)},
                    {"experimental",
                     {{"n1", cut_mean[0]}, {"n2", cut_mean[1]}, {"n3", cut_mean[2]}, {"min", m.mean}, {"min_sd", m.sd}}},
                    {"tomography_fidelity", f.mean},
                    {"first_tomograph", runs.at(0)}});
    csv += join_csv({kNegativitySchema, spec.label, format_number(theory.per_cut[0]), format_number(theory.per_cut[1]),
                     format_number(theory.per_cut[2]), format_number(theory.min), format_number(cut_mean[0]),
                     format_number(cut_mean[1]), format_number(cut_mean[2]), format_number(m.mean),
                     format_number(m.sd), format_number(f.mean)});
  }

  if (cfg.format == Format::json) {
    json doc = {{"schema", kNegativitySchema},
                {"noise", noise_to_json(cfg.noise)},
                {"repeats", cfg.repeats},
                {"rows", rows}};
    write_output(cfg.out, doc.dump(2) + "\n", out);
  } else {
    write_output(cfg.out, csv, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// reproduce

int cmd_reproduce(const ReproduceConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.figure != "table1" && cfg.figure != "table2" && cfg.figure != "fig3") {
    err << "reproduce: figure must be table1, table2 or fig3\n";
    return kExitUsage;
  }
  if (cfg.shots == 0 || cfg.repeats < 1) {
    err << "reproduce: --shots and --repeats must be positive\n";
    return kExitUsage;
  }
  const auto suite = reproduction_suite(cfg.seed);
  std::string csv;
  json rows = json::array();

  if (cfg.figure == "table2") {
    csv = join_csv({"schema", "index", "state", "theory", "experimental_mean", "experimental_sd", "theory_n1",
                    "theory_n2", "theory_n3", "experimental_n1", "experimental_n2", "experimental_n3"});
    for (const auto& e : suite) {
      const DensityOperator ideal = density_of(e.state);
      const NegativityProfile theory = negativity_profile(ideal);
      const double p = depolarizing_for_fidelity(e.fidelity_target);
      std::vector<double> mins;
      std::array<std::vector<double>, 3> cuts;
      for (int r = 0; r < cfg.repeats; ++r) {
        const NoiseSpec noise{p, cfg.shots,
                              derive_seed(cfg.seed, {stream::qst, static_cast<std::uint64_t>(e.index),
                                                     static_cast<std::uint64_t>(r)})};
        const NegativityProfile prof = negativity_profile(tomograph(ideal, noise).rho_est);
        mins.push_back(prof.min);
        for (int c = 0; c < 3; ++c) cuts[c].push_back(prof.per_cut[c]);
      }
      const Summary m = summarize(mins);
      std::array<double, 3> cm{};
      for (int c = 0; c < 3; ++c) cm[c] = summarize(cuts[c]).mean;
      csv += join_csv({kTable2Schema, std::to_string(e.index), e.label, format_number(theory.min),
                       format_number(m.mean), format_number(m.sd), format_number(theory.per_cut[0]),
                       format_number(theory.per_cut[1]), format_number(theory.per_cut[2]), format_number(cm[0]),
                       format_number(cm[1]), format_number(cm[2])});
      rows.push_back({{"index", e.index},
                      {"state", e.label},
                      {"theory", to_json(theory)},
                      {"experimental", {{"min_mean", m.mean}, {"min_sd", m.sd}, {"n1", cm[0]}, {"n2", cm[1]}, {"n3", cm[2]}}}});
    }
  } else {
    if (cfg.figure == "table1") {
      csv = join_csv({"schema", "index", "state", "fidelity", "xxx_theory", "xxx_qst", "xxx_direct", "g1_theory",
                      "g1_qst", "g1_direct", "g2_theory", "g2_qst", "g2_direct", "g3_theory", "g3_qst", "g3_direct",
                      "label_theory", "label_qst", "label_direct"});
    } else {
      csv = join_csv({"schema", "state_index", "state", "observable", "source", "value"});
    }
    for (const auto& e : suite) {
      const double p = depolarizing_for_fidelity(e.fidelity_target);
      const auto idx = static_cast<std::uint64_t>(e.index);
      const ClassificationReport theory = classify_state(e.state, MeasurementMode::exact(), cfg.thresholds);

      const NoiseSpec qst_noise{p, cfg.shots, derive_seed(cfg.seed, {stream::qst, idx, 0})};
      const TomographyResult tomo = tomograph(density_of(e.state), qst_noise);
      const DerivedValues qst = from_tomograph(tomo, e.state, cfg.thresholds);

      const NoiseSpec direct_noise{p, cfg.shots, derive_seed(cfg.seed, {stream::direct, idx})};
      const ClassificationReport direct =
          classify_state(e.state, MeasurementMode::sampled(direct_noise), cfg.thresholds);

      const double fid = fidelity(density_of(e.state), depolarize(density_of(e.state), p));
      const std::array<double, 3> xxx = {theory.tangle.xxx_expectation, qst.xxx, direct.tangle.xxx_expectation};
      const std::array<WitnessTriple, 3> g = {theory.witnesses, qst.g, direct.witnesses};

      if (cfg.figure == "table1") {
        std::vector<std::string> cells = {kTable1Schema, std::to_string(e.index), e.label, format_number(fid)};
        for (double v : xxx) cells.push_back(format_number(v));
        for (int l = 1; l <= 3; ++l)
          for (const auto& w : g) cells.push_back(format_number(w[l]));
        cells.push_back(to_string(theory.label));
        cells.push_back(to_string(qst.label));
        cells.push_back(to_string(direct.label));
        csv += join_csv(cells);
        rows.push_back({{"index", e.index},
                        {"state", e.label},
                        {"fidelity", fid},
                        {"theory", to_json(theory)},
                        {"qst", {{"xxx", qst.xxx}, {"witnesses", triple_to_json(qst.g)}, {"label", to_string(qst.label)}}},
                        {"direct", to_json(direct)}});
      } else {
        static constexpr std::array<const char*, 3> sources = {"theory", "qst", "direct"};
        static constexpr std::array<const char*, 4> observables = {"O", "G1", "G2", "G3"};
        for (int o = 0; o < 4; ++o) {
          for (int s = 0; s < 3; ++s) {
            const double v = o == 0 ? xxx[s] : g[s][o];
            csv += join_csv({kFig3Schema, std::to_string(e.index), e.label, observables[o], sources[s], format_number(v)});
            rows.push_back({{"state_index", e.index}, {"state", e.label}, {"observable", observables[o]},
                            {"source", sources[s]}, {"value", v}});
          }
        }
      }
    }
  }

  if (cfg.format == Format::json) {
    const char* schema = cfg.figure == "table1" ? kTable1Schema : cfg.figure == "table2" ? kTable2Schema : kFig3Schema;
    json doc = {{"schema", schema}, {"seed", cfg.seed}, {"shots", cfg.shots}, {"rows", rows}};
    write_output(cfg.out, doc.dump(2) + "\n", out);
  } else {
    write_output(cfg.out, csv, out);
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// selftest

int cmd_selftest(const SelftestConfig& cfg, std::ostream& out) {
  struct Suite {
    std::string name;
    bool passed;
    std::string detail;
  };
  std::vector<Suite> results;
  auto report = [&](std::string name, double worst, double tol) {
    char d[96];
    std::snprintf(d, sizeof d, "max deviation %.3g (tolerance %.0e)", worst, tol);
    results.push_back({std::move(name), worst <= tol, d});
  };

  {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 500; ++i) {
      const PureState s = random_pure(derive_seed(cfg.seed, {1, i}));
      const ExpectationTable t = direct_table(density_of(s));
      for (Bipartition cut : Bipartition::all())
        worst = std::max(worst, std::abs(evaluate_witness(cfg.polynomial, t, cut).value - concurrence_oracle(s, cut)));
    }
    report("witness polynomial vs amplitude concurrence (500 states, 3 cuts)", worst, 1e-10);
  }
  {
    double worst = 0.0;
    const auto strings = nonidentity_pauli_strings();
    for (std::uint64_t i = 0; i < 200; ++i) {
      const DensityOperator rho = density_of(random_pure(derive_seed(cfg.seed, {2, i})));
      for (const auto& p : strings)
        worst = std::max(worst, std::abs(measure_expectation(rho, p, ShotConfig::exact()).value - expectation(rho, p)));
    }
    report("mapping circuits vs direct expectation (63 strings, 200 states)", worst, 1e-12);
  }
  {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const DensityOperator rho = density_of(random_pure(derive_seed(cfg.seed, {3, i})));
      const TomographyResult tomo = tomograph(rho, NoiseSpec{});
      worst = std::max(worst, trace_distance(tomo.rho_est.matrix(), rho.matrix()));
    }
    report("noiseless tomography round trip (100 states)", worst, 1e-10);
  }
  {
    double worst = 0.0;
    for (std::uint64_t i = 0; i < 500; ++i) {
      const PureState s = generic(random_generic(derive_seed(cfg.seed, {4, i})));
      const TangleResult t = tangle(s);
      worst = std::max(worst, std::abs(t.tangle - tangle_oracle(s)));
    }
    report("<XXX>^2 vs hyperdeterminant on generic states (500 states)", worst, 1e-8);
  }

  int first_failure = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    out << (r.passed ? "PASS " : "FAIL ") << "[" << i + 1 << "] " << r.name << ": " << r.detail << "\n";
    if (!r.passed && first_failure == 0) first_failure = static_cast<int>(i + 1);
  }
  out << (first_failure == 0 ? "selftest: all suites passed\n" : "selftest: FAILED\n");
  return first_failure;
}

}  // namespace tripartite::cli
