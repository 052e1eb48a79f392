#pragma once

// Entanglement quantities: squared-concurrence witnesses G1/G2/G3 in Pauli
// polynomial and amplitude form, <XXX> and the 3-tangle, negativity, and
// Uhlmann fidelity.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tripartite/qcore.hpp"
#include "tripartite/states.hpp"

namespace tripartite {

// ---------------------------------------------------------------------------
// Witness polynomial

struct WitnessTerm {
  PauliString string;
  double coefficient;
};

/// G = scale * (constant + sum_k c_k <P_k>^2), written for the cut 1|23.
/// Other cuts swap qubit 1 with the solo qubit in every string; the 1|23
/// polynomial is symmetric in qubits 2 and 3 so the swap is well defined.
struct WitnessPolynomial {
  double constant = 3.0;
  double scale = 1.0 / 16.0;
  std::vector<WitnessTerm> terms;

  std::vector<PauliString> strings_for(Bipartition cut) const {
    std::vector<PauliString> out;
    out.reserve(terms.size());
    for (const auto& t : terms) out.push_back(t.string.swapped(1, cut.solo()));
    return out;
  }
};

inline const WitnessPolynomial& standard_witness_polynomial() {
  static const WitnessPolynomial poly = [] {
    WitnessPolynomial p;
    auto add = [&p](const char* s, double c) { p.terms.push_back({PauliString(s), c}); };
    add("IIZ", -1); add("IZI", -1); add("ZZI", +1); add("ZII", -3);
    add("ZIZ", +1); add("IZZ", -1); add("ZZZ", +1);
    add("XII", -3); add("XIZ", +1); add("XZI", +1); add("XZZ", +1);
    add("YII", -3); add("YIZ", +1); add("YZI", +1); add("YZZ", +1);
    return p;
  }();
  return poly;
}

struct WitnessValue {
  double value = 0.0;
  double std_error = 0.0;  // first-order propagation of the table's errors
};

inline WitnessValue evaluate_witness(const WitnessPolynomial& poly, const ExpectationTable& t, Bipartition cut) {
  double sum = poly.constant;
  double variance = 0.0;
  for (const auto& term : poly.terms) {
    const PauliString s = term.string.swapped(1, cut.solo());
    if (!t.contains(s)) throw std::invalid_argument("expectation table is missing " + s.str() + " required by cut " + cut.name());
    const double v = t.at(s);
    sum += term.coefficient * v * v;
    const double grad = poly.scale * 2.0 * term.coefficient * v;
    const double err = t.std_error(s);
    variance += grad * grad * err * err;
  }
  return {poly.scale * sum, std::sqrt(variance)};
}

/// Squared concurrence across `cut` from Pauli expectations (pure states).
inline double witness_from_expectations(const ExpectationTable& t, Bipartition cut) {
  return evaluate_witness(standard_witness_polynomial(), t, cut).value;
}

struct WitnessTriple {
  double g1 = 0.0, g2 = 0.0, g3 = 0.0;

  double operator[](int solo) const {
    switch (solo) {
      case 1: return g1;
      case 2: return g2;
      case 3: return g3;
    }
    throw std::out_of_range("witness index must be 1, 2 or 3");
  }
  double& operator[](int solo) {
    switch (solo) {
      case 1: return g1;
      case 2: return g2;
      case 3: return g3;
    }
    throw std::out_of_range("witness index must be 1, 2 or 3");
  }
};

struct WitnessEstimate {
  WitnessTriple values;
  WitnessTriple std_errors;
};

inline WitnessEstimate witnesses_from_expectations(const ExpectationTable& t,
                                                   const WitnessPolynomial& poly = standard_witness_polynomial()) {
  WitnessEstimate out;
  for (Bipartition cut : Bipartition::all()) {
    const auto w = evaluate_witness(poly, t, cut);
    out.values[cut.solo()] = w.value;
    out.std_errors[cut.solo()] = w.std_error;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Amplitude-form concurrence

/// sum|a_0..|^2 * sum|a_1..|^2 - |sum a_0.. a*_1..|^2 with the solo qubit's
/// bit playing the role of the leading index.
inline double concurrence_oracle(const PureState& state, Bipartition cut) {
  require_normalized(state);
  const unsigned mask = qubit_mask(cut.solo());
  double n0 = 0.0, n1 = 0.0;
  Complex overlap = 0.0;
  for (unsigned i = 0; i < kDim; ++i) {
    if (i & mask) continue;
    const Complex a0 = state[i];
    const Complex a1 = state[i | mask];
    n0 += std::norm(a0);
    n1 += std::norm(a1);
    overlap += a0 * std::conj(a1);
  }
  return n0 * n1 - std::norm(overlap);
}

inline WitnessTriple concurrence_triple(const PureState& state) {
  WitnessTriple w;
  for (Bipartition cut : Bipartition::all()) w[cut.solo()] = concurrence_oracle(state, cut);
  return w;
}

// ---------------------------------------------------------------------------
// 3-tangle

/// Cayley hyperdeterminant form: tau = 4 |d1 - 2 d2 + 4 d3|.
inline double tangle_oracle(const PureState& state) {
  require_normalized(state);
  auto a = [&state](int i) { return state[i]; };
  const Complex d1 = a(0) * a(0) * a(7) * a(7) + a(1) * a(1) * a(6) * a(6) +
                     a(2) * a(2) * a(5) * a(5) + a(4) * a(4) * a(3) * a(3);
  const Complex d2 = a(0) * a(7) * a(3) * a(4) + a(0) * a(7) * a(5) * a(2) +
                     a(0) * a(7) * a(6) * a(1) + a(3) * a(4) * a(5) * a(2) +
                     a(3) * a(4) * a(6) * a(1) + a(5) * a(2) * a(6) * a(1);
  const Complex d3 = a(0) * a(6) * a(5) * a(3) + a(7) * a(1) * a(2) * a(4);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

enum class TanglePath { xxx_shortcut, oracle };

inline std::string to_string(TanglePath p) {
  return p == TanglePath::xxx_shortcut ? "xxx_shortcut" : "oracle";
}

struct TangleResult {
  double xxx_expectation = 0.0;
  double tangle = 0.0;
  TanglePath path = TanglePath::xxx_shortcut;
};

inline const PauliString kXXX{Pauli::X, Pauli::X, Pauli::X};

/// <XXX> always; tau = <XXX>^2 on canonical generic states and the
/// hyperdeterminant otherwise.
inline TangleResult tangle(const PureState& state) {
  require_normalized(state);
  TangleResult r;
  r.xxx_expectation = expectation(state, kXXX);
  if (is_canonical_generic(state)) {
    r.tangle = r.xxx_expectation * r.xxx_expectation;
    r.path = TanglePath::xxx_shortcut;
  } else {
    r.tangle = tangle_oracle(state);
    r.path = TanglePath::oracle;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Negativity

inline constexpr double kNegativityClamp = 1e-10;

inline double negativity(const Matrix8& rho, Bipartition cut) {
  const auto eig = hermitian_eigen(partial_transpose(rho, cut));
  double sum = 0.0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) < -kNegativityClamp) sum -= eig.values(i);
  return sum;
}

inline double negativity(const DensityOperator& rho, Bipartition cut) { return negativity(rho.matrix(), cut); }

struct NegativityProfile {
  std::array<double, 3> per_cut{};
  double min = 0.0;
};

inline NegativityProfile negativity_profile(const DensityOperator& rho) {
  NegativityProfile p;
  for (Bipartition cut : Bipartition::all()) p.per_cut[cut.solo() - 1] = negativity(rho, cut);
  p.min = *std::min_element(p.per_cut.begin(), p.per_cut.end());
  return p;
}

// ---------------------------------------------------------------------------
// Fidelity

/// Eigenvalues below this are treated as exact zeros when taking square roots;
/// rounding noise of ~1e-16 would otherwise surface as ~1e-8 after sqrt.
inline constexpr double kSqrtEigenFloor = 1e-13;

template <typename Derived>
Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> psd_sqrt(const Eigen::MatrixBase<Derived>& m) {
  const auto eig = hermitian_eigen(m);
  if (eig.values(0) < -kPsdTolerance) throw std::invalid_argument("matrix square root needs a PSD argument");
  Eigen::Matrix<double, Eigen::Dynamic, 1> roots = eig.values;
  for (Eigen::Index i = 0; i < roots.size(); ++i) roots(i) = roots(i) > kSqrtEigenFloor ? std::sqrt(roots(i)) : 0.0;
  return eig.vectors * roots.asDiagonal() * eig.vectors.adjoint();
}

/// F = (tr sqrt(sqrt(a) b sqrt(a)))^2, computed as the squared nuclear norm
/// of sqrt(a) sqrt(b). Symmetric in its arguments by construction.
inline double fidelity(const Matrix8& a, const Matrix8& b) {
  const auto sa = psd_sqrt(a);
  const auto sb = psd_sqrt(b);
  const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> prod = sa * sb;
  Eigen::JacobiSVD<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> svd(prod);
  const double nuclear = svd.singularValues().sum();
  return std::clamp(nuclear * nuclear, 0.0, 1.0);
}

inline double fidelity(const DensityOperator& a, const DensityOperator& b) { return fidelity(a.matrix(), b.matrix()); }

/// |<psi|phi>|^2 shortcut for two pure states.
inline double fidelity(const PureState& a, const PureState& b) { return std::norm(a.inner(b)); }

}  // namespace tripartite
