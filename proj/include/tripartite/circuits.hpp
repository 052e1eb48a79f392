#pragma once

// Gate-level mapping of a Pauli expectation onto the sigma_z readout of a
// single qubit, with optional finite-shot sampling.
//
// Gate convention: every gate carries a matrix U and acts on a state as
// rho -> U^dag rho U. For local rotations U is chosen so that the physical
// evolution U^dag is a pi/2 (or pi) rotation about the named axis, with a
// barred axis meaning negative phase:
//
//   LocalRot(q, ybar) : evolves by R_y(-pi/2), maps an X readout onto Z
//   LocalRot(q, x)    : evolves by R_x(+pi/2), maps a Y readout onto Z
//
// which makes the plan for XXX reproduce [Ybar1, Ybar2, CNOT12, Ybar3, CNOT23]
// with a +1 sign on qubit 3.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "tripartite/qcore.hpp"
#include "tripartite/seeding.hpp"

namespace tripartite {

enum class Axis { x, y, xbar, ybar };

inline std::string to_string(Axis a) {
  switch (a) {
    case Axis::x: return "X";
    case Axis::y: return "Y";
    case Axis::xbar: return "Xbar";
    case Axis::ybar: return "Ybar";
  }
  return "?";
}

struct Gate {
  enum class Kind { cnot, local_rot, local_pi };

  Kind kind = Kind::local_rot;
  int qubit = 1;   // target for CNOT
  int control = 0; // CNOT only
  Axis axis = Axis::x;

  static Gate cnot(int control, int target) {
    require_qubit(control);
    require_qubit(target);
    if (control == target) throw std::invalid_argument("CNOT control and target must differ");
    return {Kind::cnot, target, control, Axis::x};
  }
  static Gate rot(int qubit, Axis axis) {
    require_qubit(qubit);
    return {Kind::local_rot, qubit, 0, axis};
  }
  static Gate pi(int qubit, Axis axis) {
    require_qubit(qubit);
    return {Kind::local_pi, qubit, 0, axis};
  }

  std::string str() const {
    switch (kind) {
      case Kind::cnot: return "CNOT" + std::to_string(control) + std::to_string(qubit);
      case Kind::local_rot: return to_string(axis) + std::to_string(qubit);
      case Kind::local_pi: return to_string(axis) + "pi" + std::to_string(qubit);
    }
    return "?";
  }

  bool operator==(const Gate&) const = default;
};

namespace detail {

/// exp(-i angle/2 sigma_axis), the physical rotation.
inline Matrix2 rotation(Axis axis, double angle) {
  const double sign = (axis == Axis::xbar || axis == Axis::ybar) ? -1.0 : 1.0;
  const Pauli p = (axis == Axis::x || axis == Axis::xbar) ? Pauli::X : Pauli::Y;
  const double half = sign * angle / 2.0;
  return std::cos(half) * pauli_matrix(Pauli::I) - Complex(0, 1) * std::sin(half) * pauli_matrix(p);
}

inline Matrix8 embed(const Matrix2& single, int qubit) {
  const Matrix2 id = pauli_matrix(Pauli::I);
  return kron3(qubit == 1 ? single : id, qubit == 2 ? single : id, qubit == 3 ? single : id);
}

}  // namespace detail

/// U in rho -> U^dag rho U.
inline Matrix8 gate_matrix(const Gate& g) {
  switch (g.kind) {
    case Gate::Kind::cnot: {
      require_qubit(g.control);
      require_qubit(g.qubit);
      if (g.control == g.qubit) throw std::invalid_argument("CNOT control and target must differ");
      Matrix8 u = Matrix8::Zero();
      const unsigned cm = qubit_mask(g.control), tm = qubit_mask(g.qubit);
      for (unsigned i = 0; i < kDim; ++i) u((i & cm) ? (i ^ tm) : i, i) = 1.0;
      return u;
    }
    case Gate::Kind::local_rot:
      require_qubit(g.qubit);
      return detail::embed(detail::rotation(g.axis, std::numbers::pi / 2).adjoint(), g.qubit);
    case Gate::Kind::local_pi:
      require_qubit(g.qubit);
      return detail::embed(detail::rotation(g.axis, std::numbers::pi).adjoint(), g.qubit);
  }
  throw std::invalid_argument("unknown gate kind");
}

inline Matrix8 apply(const Matrix8& m, const Gate& g) {
  const Matrix8 u = gate_matrix(g);
  return u.adjoint() * m * u;
}

inline DensityOperator apply(const DensityOperator& rho, const Gate& g) {
  return {tripartite::apply(rho.matrix(), g), DensityOperator::Unchecked{}};
}

// ---------------------------------------------------------------------------
// Mapping plans

struct MappingPlan {
  std::vector<Gate> gates;
  int readout_qubit = 1;

  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < gates.size(); ++i) s += (i ? ", " : "") + gates[i].str();
    return s + "] -> Z" + std::to_string(readout_qubit);
  }
};

/// Basis change per non-identity qubit (X -> Ybar, Y -> X, Z -> none) followed
/// by a CNOT from the previous non-identity qubit, so the parity accumulates
/// on the highest-indexed one.
inline MappingPlan plan_for(const PauliString& p) {
  if (p.is_identity()) throw std::invalid_argument("identity string has no observable to map");
  MappingPlan plan;
  int previous = 0;
  for (int q = 1; q <= kQubits; ++q) {
    const Pauli label = p[q];
    if (label == Pauli::I) continue;
    if (label == Pauli::X) plan.gates.push_back(Gate::rot(q, Axis::ybar));
    if (label == Pauli::Y) plan.gates.push_back(Gate::rot(q, Axis::x));
    if (previous != 0) plan.gates.push_back(Gate::cnot(previous, q));
    previous = q;
  }
  plan.readout_qubit = previous;
  return plan;
}

inline Matrix8 run_plan(const Matrix8& m, const MappingPlan& plan) {
  Matrix8 out = m;
  for (const Gate& g : plan.gates) out = tripartite::apply(out, g);
  return out;
}

inline double readout_z(const Matrix8& m, int qubit) {
  const unsigned mask = qubit_mask(qubit);
  double z = 0.0;
  for (unsigned i = 0; i < kDim; ++i) z += (i & mask) ? -m(i, i).real() : m(i, i).real();
  return z;
}

// ---------------------------------------------------------------------------
// Measurement

/// shots == nullopt means exact expectation.
struct ShotConfig {
  std::optional<std::uint64_t> shots;
  Seed seed = 0;

  static ShotConfig exact() { return {}; }
  static ShotConfig sampled(std::uint64_t shots, Seed seed) {
    if (shots == 0) throw std::invalid_argument("shot count must be positive");
    return {shots, seed};
  }
};

struct Measurement {
  double value = 0.0;
  double std_error = 0.0;
  Provenance provenance = Provenance::circuit;
};

/// Draws `shots` +-1 outcomes with P(+1) = (1 + z)/2.
inline Measurement sample_z(double z, std::uint64_t shots, Seed seed) {
  if (shots == 0) throw std::invalid_argument("shot count must be positive");
  const double p_plus = std::clamp((1.0 + z) / 2.0, 0.0, 1.0);
  Rng rng = make_rng(seed);
  std::binomial_distribution<std::uint64_t> binom(shots, p_plus);
  const std::uint64_t plus = binom(rng);
  const double n = static_cast<double>(shots);
  const double mean = (2.0 * static_cast<double>(plus) - n) / n;
  const double variance = shots > 1 ? std::max(0.0, 1.0 - mean * mean) * n / (n - 1.0) : 1.0;
  return {mean, std::sqrt(variance / n), Provenance::sampled};
}

inline Measurement measure_expectation(const DensityOperator& rho, const PauliString& p, const ShotConfig& cfg) {
  const MappingPlan plan = plan_for(p);
  const double z = readout_z(run_plan(rho.matrix(), plan), plan.readout_qubit);
  if (!cfg.shots) return {z, 0.0, Provenance::circuit};
  return sample_z(z, *cfg.shots, cfg.seed);
}

/// All 63 strings through the mapping circuits. String i is sampled with
/// derive_seed(cfg.seed, {stream::pauli_string, i}).
inline ExpectationTable measure_table(const DensityOperator& rho, const ShotConfig& cfg) {
  ExpectationTable t(cfg.shots ? Provenance::sampled : Provenance::circuit);
  for (const auto& p : nonidentity_pauli_strings()) {
    ShotConfig sub = cfg;
    sub.seed = derive_seed(cfg.seed, {stream::pauli_string, static_cast<std::uint64_t>(p.index())});
    const Measurement m = measure_expectation(rho, p, sub);
    t.set(p, m.value, m.std_error);
  }
  return t;
}

}  // namespace tripartite
