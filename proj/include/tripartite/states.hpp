#pragma once

// Canonical, named, random and pseudopure three-qubit states.

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tripartite/qcore.hpp"
#include "tripartite/seeding.hpp"

namespace tripartite {

// ---------------------------------------------------------------------------
// Canonical generic form
//   a0|000> + a1 e^{i theta}|100> + a2|101> + a3|110> + a4|111>

struct GenericParams {
  std::array<double, 5> a{1.0, 0.0, 0.0, 0.0, 0.0};
  double theta = 0.0;

  void validate() const {
    double sum = 0.0;
    for (double ai : a) {
      if (!std::isfinite(ai) || ai < 0.0) throw std::invalid_argument("generic amplitudes must be finite and >= 0");
      sum += ai * ai;
    }
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("generic amplitudes must satisfy sum a_i^2 = 1");
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw std::invalid_argument("generic phase must lie in [0, pi]");
  }
};

inline PureState generic(const GenericParams& params) {
  params.validate();
  Vector8 v = Vector8::Zero();
  v(0b000) = params.a[0];
  v(0b100) = std::polar(params.a[1], params.theta);
  v(0b101) = params.a[2];
  v(0b110) = params.a[3];
  v(0b111) = params.a[4];
  return PureState(v);
}

/// Whether the amplitudes already have the canonical generic shape.
inline bool is_canonical_generic(const PureState& s, double tol = 1e-12) {
  for (int idx : {0b001, 0b010, 0b011})
    if (std::abs(s[idx]) > tol) return false;
  for (int idx : {0b000, 0b101, 0b110, 0b111})
    if (std::abs(s[idx].imag()) > tol || s[idx].real() < -tol) return false;
  // phase of the |100> amplitude must lie in [0, pi]
  return s[0b100].imag() >= -tol;
}

// ---------------------------------------------------------------------------
// Named representatives

enum class NamedState { GHZ, W, WWbar, BS1, BS2, BS3, Sep };

inline constexpr std::array<NamedState, 7> kNamedStates = {
    NamedState::GHZ, NamedState::WWbar, NamedState::W, NamedState::BS1,
    NamedState::BS2, NamedState::BS3,   NamedState::Sep};

inline std::string to_string(NamedState tag) {
  switch (tag) {
    case NamedState::GHZ: return "GHZ";
    case NamedState::W: return "W";
    case NamedState::WWbar: return "WWbar";
    case NamedState::BS1: return "BS1";
    case NamedState::BS2: return "BS2";
    case NamedState::BS3: return "BS3";
    case NamedState::Sep: return "Sep";
  }
  return "?";
}

inline std::optional<NamedState> parse_named_state(std::string_view name) {
  for (NamedState tag : kNamedStates)
    if (to_string(tag) == name) return tag;
  return std::nullopt;
}

inline PureState named(NamedState tag) {
  auto superpose = [](std::initializer_list<std::string_view> labels) {
    Vector8 v = Vector8::Zero();
    for (auto l : labels) v += PureState::basis(l).amplitudes();
    return PureState::normalized(v);
  };
  switch (tag) {
    case NamedState::GHZ: return superpose({"000", "111"});
    case NamedState::W: return superpose({"001", "010", "100"});
    case NamedState::WWbar: return superpose({"001", "010", "100", "110", "101", "011"});
    case NamedState::BS1: return superpose({"000", "011"});
    case NamedState::BS2: return superpose({"000", "101"});
    case NamedState::BS3: return superpose({"000", "110"});
    case NamedState::Sep: return PureState::basis("000");
  }
  throw std::invalid_argument("unknown named state");
}

// ---------------------------------------------------------------------------
// Seeded random states

namespace detail {
inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline Vector8 gaussian_vector(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector8 v;
  for (int i = 0; i < kDim; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

/// Haar-distributed single-qubit state.
inline Eigen::Matrix<Complex, 2, 1> random_qubit(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix<Complex, 2, 1> v;
  for (int i = 0; i < 2; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v.normalized();
}
}  // namespace detail

/// Squared amplitudes uniform on the 4-simplex, theta uniform on [0, pi].
inline GenericParams random_generic(Seed seed) {
  Rng rng = make_rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::array<double, 5> w{};
  double total = 0.0;
  for (double& wi : w) total += (wi = expo(rng));
  GenericParams p;
  double sum = 0.0;
  for (int i = 0; i < 5; ++i) sum += (p.a[i] = std::sqrt(w[i] / total)) * p.a[i];
  // renormalize so validate() holds at 1e-12
  const double scale = 1.0 / std::sqrt(sum);
  for (double& ai : p.a) ai *= scale;
  p.theta = std::numbers::pi * detail::uniform01(rng);
  return p;
}

/// Normalized vector of i.i.d. complex Gaussians (Haar measure).
inline PureState random_pure(Seed seed) {
  Rng rng = make_rng(seed);
  return PureState::normalized(detail::gaussian_vector(rng));
}

/// Product of three Haar-random qubits.
inline PureState random_product(Seed seed) {
  Rng rng = make_rng(seed);
  const auto q1 = detail::random_qubit(rng);
  const auto q2 = detail::random_qubit(rng);
  const auto q3 = detail::random_qubit(rng);
  Vector8 v;
  for (int i = 0; i < kDim; ++i) v(i) = q1(i >> 2) * q2((i >> 1) & 1) * q3(i & 1);
  return PureState::normalized(v);
}

/// Haar-random qubit on `cut.solo()` times a Haar-random two-qubit state on
/// the remaining pair.
inline PureState random_biseparable(Seed seed, Bipartition cut) {
  Rng rng = make_rng(seed);
  const auto solo = detail::random_qubit(rng);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::Matrix<Complex, 4, 1> pair;
  for (int i = 0; i < 4; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    pair(i) = Complex(re, im);
  }
  pair.normalize();
  const unsigned solo_mask = qubit_mask(cut.solo());
  Vector8 v;
  for (unsigned i = 0; i < kDim; ++i) {
    // pack the two remaining bits in qubit order
    unsigned rest = 0;
    for (int q = 1; q <= kQubits; ++q) {
      if (q == cut.solo()) continue;
      rest = 2 * rest + ((i & qubit_mask(q)) ? 1 : 0);
    }
    v(i) = solo((i & solo_mask) ? 1 : 0) * pair(rest);
  }
  return PureState::normalized(v);
}

// ---------------------------------------------------------------------------
// Pseudopure states

/// (1 - eps)/8 * I + eps |base><base|.
inline DensityOperator pps(double epsilon, const PureState& base) {
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw std::invalid_argument("pps polarization must lie in [0, 1]");
  const Matrix8 m = (1.0 - epsilon) / kDim * Matrix8::Identity() + epsilon * density_of(base).matrix();
  return {m, DensityOperator::Unchecked{}};
}

}  // namespace tripartite
