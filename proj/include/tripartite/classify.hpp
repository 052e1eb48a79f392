#pragma once

// SLOCC class decision from the three concurrence witnesses and the 3-tangle.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tripartite/circuits.hpp"
#include "tripartite/measures.hpp"
#include "tripartite/states.hpp"
#include "tripartite/tomography.hpp"

namespace tripartite {

enum class ClassLabel { Separable, Biseparable1, Biseparable2, Biseparable3, GHZ, W };

inline std::string to_string(ClassLabel l) {
  switch (l) {
    case ClassLabel::Separable: return "Separable";
    case ClassLabel::Biseparable1: return "Biseparable1";
    case ClassLabel::Biseparable2: return "Biseparable2";
    case ClassLabel::Biseparable3: return "Biseparable3";
    case ClassLabel::GHZ: return "GHZ";
    case ClassLabel::W: return "W";
  }
  return "?";
}

/// 0 for Separable, 1 for biseparable, 2 for genuinely entangled.
inline int entanglement_rank(ClassLabel l) {
  switch (l) {
    case ClassLabel::Separable: return 0;
    case ClassLabel::Biseparable1:
    case ClassLabel::Biseparable2:
    case ClassLabel::Biseparable3: return 1;
    case ClassLabel::GHZ:
    case ClassLabel::W: return 2;
  }
  return -1;
}

inline ClassLabel biseparable_label(int solo) {
  static constexpr std::array<ClassLabel, 3> labels = {ClassLabel::Biseparable1, ClassLabel::Biseparable2,
                                                       ClassLabel::Biseparable3};
  return labels.at(solo - 1);
}

struct Thresholds {
  double zero_tol_g = 0.05;
  double zero_tol_tangle = 0.01;  // compared against tau = <XXX>^2 or the oracle

  void validate() const {
    auto ok = [](double t) { return t > 0.0 && t < 0.125; };
    if (!ok(zero_tol_g) || !ok(zero_tol_tangle)) throw std::invalid_argument("thresholds must lie in (0, 0.125)");
  }
};

struct Margins {
  std::array<double, 3> g{};  // G_l - zero_tol_g
  double tangle = 0.0;        // tau - zero_tol_tangle
};

struct ClassificationReport {
  WitnessTriple witnesses;
  WitnessTriple witness_errors;
  TangleResult tangle;
  std::optional<double> tangle_error;
  ClassLabel label = ClassLabel::Separable;
  Thresholds thresholds;
  Margins margins;
  std::vector<std::string> warnings;
  std::string mode = "exact";
};

/// Two or more vanishing witnesses -> Separable; exactly one -> Biseparable_l;
/// none -> GHZ when the tangle clears its threshold, W otherwise.
inline ClassificationReport classify(const WitnessTriple& w, const TangleResult& t, const Thresholds& th) {
  ClassificationReport r;
  r.witnesses = w;
  r.tangle = t;
  r.thresholds = th;
  int zeros = 0;
  int zero_cut = 0;
  for (int l = 1; l <= 3; ++l) {
    r.margins.g[l - 1] = w[l] - th.zero_tol_g;
    if (w[l] <= th.zero_tol_g) {
      ++zeros;
      zero_cut = l;
    }
  }
  r.margins.tangle = t.tangle - th.zero_tol_tangle;

  if (zeros >= 2) {
    r.label = ClassLabel::Separable;
    // for pure states two vanishing witnesses force the third to vanish
    if (zeros == 2)
      r.warnings.push_back("two witnesses vanish but the third does not; impossible for an exact pure state");
  } else if (zeros == 1) {
    r.label = biseparable_label(zero_cut);
  } else {
    r.label = t.tangle > th.zero_tol_tangle ? ClassLabel::GHZ : ClassLabel::W;
  }
  return r;
}

/// Label computed from the amplitude-form witnesses and the hyperdeterminant.
inline ClassLabel oracle_label(const PureState& state, const Thresholds& th) {
  TangleResult t;
  t.xxx_expectation = expectation(state, kXXX);
  t.tangle = tangle_oracle(state);
  t.path = TanglePath::oracle;
  return classify(concurrence_triple(state), t, th).label;
}

// ---------------------------------------------------------------------------

struct MeasurementMode {
  enum class Kind { exact, circuit, sampled };

  Kind kind = Kind::exact;
  NoiseSpec noise;  // ignored in exact mode

  static MeasurementMode exact() { return {}; }
  static MeasurementMode circuit(double depolarizing_p = 0.0) { return {Kind::circuit, {depolarizing_p, std::nullopt, 0}}; }
  static MeasurementMode sampled(const NoiseSpec& noise) {
    if (!noise.shots) throw std::invalid_argument("sampled mode needs a shot count");
    return {Kind::sampled, noise};
  }

  std::string name() const {
    switch (kind) {
      case Kind::exact: return "exact";
      case Kind::circuit: return "circuit";
      case Kind::sampled: return "sampled";
    }
    return "?";
  }
};

/// The state as prepared under `mode` (depolarized in the noisy modes).
inline DensityOperator prepared_state(const PureState& state, const MeasurementMode& mode) {
  const DensityOperator ideal = density_of(state);
  if (mode.kind == MeasurementMode::Kind::exact || mode.noise.depolarizing_p == 0.0) return ideal;
  return depolarize(ideal, mode.noise.depolarizing_p);
}

/// Table of expectations under `mode`, with <XXX> included.
inline ExpectationTable measured_table(const PureState& state, const MeasurementMode& mode) {
  mode.noise.validate();
  const DensityOperator rho = prepared_state(state, mode);
  switch (mode.kind) {
    case MeasurementMode::Kind::exact: return direct_table(rho);
    case MeasurementMode::Kind::circuit: return measure_table(rho, ShotConfig::exact());
    case MeasurementMode::Kind::sampled: return measure_table(rho, mode.noise.shot_config());
  }
  throw std::invalid_argument("unknown measurement mode");
}

/// Tangle from a measured table. Canonical generic inputs use the measured
/// <XXX>^2; other states fall back to the hyperdeterminant of the input, with
/// the measured <XXX> still reported.
inline std::pair<TangleResult, std::optional<double>> tangle_from_table(const PureState& prepared,
                                                                        const ExpectationTable& t) {
  TangleResult r;
  r.xxx_expectation = t.at(kXXX);
  if (is_canonical_generic(prepared)) {
    r.tangle = r.xxx_expectation * r.xxx_expectation;
    r.path = TanglePath::xxx_shortcut;
    return {r, 2.0 * std::abs(r.xxx_expectation) * t.std_error(kXXX)};
  }
  r.tangle = tangle_oracle(prepared);
  r.path = TanglePath::oracle;
  return {r, std::nullopt};
}

inline ClassificationReport classify_state(const PureState& state, const MeasurementMode& mode,
                                           const Thresholds& th = {}) {
  require_normalized(state);
  th.validate();
  const ExpectationTable table = measured_table(state, mode);
  const WitnessEstimate w = witnesses_from_expectations(table);

  TangleResult t;
  std::optional<double> t_err;
  if (mode.kind == MeasurementMode::Kind::exact) {
    t = tangle(state);
    t_err = 0.0;
  } else {
    std::tie(t, t_err) = tangle_from_table(state, table);
  }

  ClassificationReport r = classify(w.values, t, th);
  r.witness_errors = w.std_errors;
  r.tangle_error = t_err;
  r.mode = mode.name();
  return r;
}

}  // namespace tripartite
