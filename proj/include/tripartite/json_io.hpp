#pragma once

// JSON state files and report serialization.
//
// A state document is one of
//   {"generic": {"a": [a0, a1, a2, a3, a4], "theta": t}}
//   {"amplitudes": [[re, im], ... 8 pairs]}
//   {"named": "GHZ"}
// with an optional "label". A file holds one document or an array of them.

#include <cmath>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "tripartite/classify.hpp"
#include "tripartite/measures.hpp"
#include "tripartite/states.hpp"
#include "tripartite/tomography.hpp"

namespace tripartite {

using json = nlohmann::json;

inline constexpr const char* kReportSchema = "tripartite-report/1";

struct StateSpec {
  std::string label;
  PureState state;
};

class StateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline double finite_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw StateFormatError(what + " must be a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw StateFormatError(what + " must be finite");
  return v;
}
}  // namespace detail

inline StateSpec parse_state(const json& doc, const std::string& fallback_label = "state") {
  if (!doc.is_object()) throw StateFormatError("state document must be a JSON object");
  std::string label = fallback_label;
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) throw StateFormatError("label must be a string");
    label = doc["label"].get<std::string>();
  }
  const int kinds = int(doc.contains("generic")) + int(doc.contains("amplitudes")) + int(doc.contains("named"));
  if (kinds != 1) throw StateFormatError("state document needs exactly one of generic, amplitudes, named");

  if (doc.contains("named")) {
    const auto& n = doc["named"];
    if (!n.is_string()) throw StateFormatError("named must be a string");
    const auto tag = parse_named_state(n.get<std::string>());
    if (!tag) throw StateFormatError("unknown named state '" + n.get<std::string>() + "'");
    if (!doc.contains("label")) label = to_string(*tag);
    return {label, named(*tag)};
  }

  if (doc.contains("generic")) {
    const auto& g = doc["generic"];
    if (!g.is_object() || !g.contains("a") || !g.contains("theta")) throw StateFormatError("generic needs a and theta");
    const auto& a = g["a"];
    if (!a.is_array() || a.size() != 5) throw StateFormatError("generic.a must hold five amplitudes");
    GenericParams p;
    for (int i = 0; i < 5; ++i) p.a[i] = detail::finite_number(a[i], "generic.a[" + std::to_string(i) + "]");
    p.theta = detail::finite_number(g["theta"], "generic.theta");
    try {
      return {label, generic(p)};
    } catch (const std::invalid_argument& e) {
      throw StateFormatError(e.what());
    }
  }

  const auto& amps = doc["amplitudes"];
  if (!amps.is_array() || amps.size() != kDim) throw StateFormatError("amplitudes must hold eight [re, im] pairs");
  Vector8 v;
  for (int i = 0; i < kDim; ++i) {
    const auto& pair = amps[i];
    if (!pair.is_array() || pair.size() != 2) throw StateFormatError("amplitude " + std::to_string(i) + " must be [re, im]");
    v(i) = Complex(detail::finite_number(pair[0], "amplitude re"), detail::finite_number(pair[1], "amplitude im"));
  }
  PureState s(v);
  if (!s.is_normalized()) throw StateFormatError("amplitudes are not normalized");
  return {label, s};
}

inline std::vector<StateSpec> parse_states(const json& doc, const std::string& fallback_label) {
  std::vector<StateSpec> out;
  if (doc.is_array()) {
    for (std::size_t i = 0; i < doc.size(); ++i)
      out.push_back(parse_state(doc[i], fallback_label + "#" + std::to_string(i + 1)));
  } else {
    out.push_back(parse_state(doc, fallback_label));
  }
  return out;
}

inline std::vector<StateSpec> load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StateFormatError("cannot open state file " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw StateFormatError(path + ": " + e.what());
  }
  return parse_states(doc, path);
}

// ---------------------------------------------------------------------------
// Serialization

inline json matrix_to_json(const Matrix8& m) {
  json rows = json::array();
  for (int r = 0; r < kDim; ++r) {
    json row = json::array();
    for (int c = 0; c < kDim; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json state_to_json(const PureState& s) {
  json amps = json::array();
  for (int i = 0; i < kDim; ++i) amps.push_back({s[i].real(), s[i].imag()});
  return {{"amplitudes", amps}};
}

inline json triple_to_json(const WitnessTriple& w) { return {{"g1", w.g1}, {"g2", w.g2}, {"g3", w.g3}}; }

inline json to_json(const Thresholds& th) {
  return {{"zero_tol_g", th.zero_tol_g}, {"zero_tol_tangle", th.zero_tol_tangle}};
}

inline json to_json(const ClassificationReport& r) {
  json tangle = {{"xxx", r.tangle.xxx_expectation}, {"value", r.tangle.tangle}, {"path", to_string(r.tangle.path)}};
  tangle["std_error"] = r.tangle_error ? json(*r.tangle_error) : json(nullptr);
  return {
      {"mode", r.mode},
      {"witnesses", triple_to_json(r.witnesses)},
      {"witness_std_errors", triple_to_json(r.witness_errors)},
      {"tangle", tangle},
      {"label", to_string(r.label)},
      {"margins", {{"g1", r.margins.g[0]}, {"g2", r.margins.g[1]}, {"g3", r.margins.g[2]}, {"tangle", r.margins.tangle}}},
      {"thresholds", to_json(r.thresholds)},
      {"warnings", r.warnings},
  };
}

inline json to_json(const NegativityProfile& p) {
  return {{"n1", p.per_cut[0]}, {"n2", p.per_cut[1]}, {"n3", p.per_cut[2]}, {"min", p.min}};
}

inline json to_json(const ExpectationTable& t) {
  json values = json::object();
  for (const auto& [p, v] : t.values()) values[p.str()] = v;
  return values;
}

inline json to_json(const TomographyResult& r, const std::optional<DensityOperator>& target = std::nullopt) {
  json j = {
      {"expectations", to_json(r.raw_expectations)},
      {"provenance", to_string(r.raw_expectations.provenance())},
      {"rho", matrix_to_json(r.rho_est.matrix())},
      {"projection_distance", r.projection_distance},
  };
  j["fidelity_to_target"] = target ? json(fidelity(*target, r.rho_est)) : json(nullptr);
  return j;
}

}  // namespace tripartite
