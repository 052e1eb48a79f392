#pragma once

// Dense linear algebra over the three-qubit Hilbert space.
//
// Basis ordering: |ijk> lives at index 4*i + 2*j + k, qubit 1 is the most
// significant bit. Qubits are labelled 1, 2, 3 throughout the public API.

#include <array>
#include <cmath>
#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace tripartite {

using Complex = std::complex<double>;
using Vector8 = Eigen::Matrix<Complex, 8, 1>;
using Matrix8 = Eigen::Matrix<Complex, 8, 8>;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;

inline constexpr int kQubits = 3;
inline constexpr int kDim = 8;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kTraceTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;

/// Bit mask of qubit `q` (1-based) inside a basis index.
constexpr unsigned qubit_mask(int q) noexcept { return 1u << (kQubits - q); }

inline void require_qubit(int q) {
  if (q < 1 || q > kQubits)
    throw std::invalid_argument("qubit index must be 1, 2 or 3, got " + std::to_string(q));
}

// ---------------------------------------------------------------------------
// PureState

/// Eight complex amplitudes a_ijk. Normalization is checked by the operations
/// that need it, so un-normalized vectors can be carried around and fixed up
/// with normalized().
class PureState {
 public:
  PureState() { amplitudes_.setZero(); amplitudes_(0) = 1.0; }
  explicit PureState(const Vector8& amplitudes) : amplitudes_(amplitudes) {}

  static PureState normalized(const Vector8& amplitudes) {
    const double n = amplitudes.norm();
    if (!(n > 0.0) || !std::isfinite(n))
      throw std::invalid_argument("cannot normalize a zero or non-finite amplitude vector");
    return PureState(amplitudes / n);
  }

  /// Basis state |ijk> from its label, e.g. "101".
  static PureState basis(std::string_view label) {
    if (label.size() != 3) throw std::invalid_argument("basis label must have three bits");
    int index = 0;
    for (char c : label) {
      if (c != '0' && c != '1') throw std::invalid_argument("basis label must be binary");
      index = 2 * index + (c - '0');
    }
    Vector8 v = Vector8::Zero();
    v(index) = 1.0;
    return PureState(v);
  }

  const Vector8& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](int index) const { return amplitudes_(index); }
  double norm_squared() const { return amplitudes_.squaredNorm(); }
  bool is_normalized(double tol = kNormTolerance) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  Complex inner(const PureState& other) const { return amplitudes_.dot(other.amplitudes_); }

 private:
  Vector8 amplitudes_;
};

inline void require_normalized(const PureState& s) {
  if (!s.is_normalized())
    throw std::invalid_argument("state is not normalized (|norm^2 - 1| = " +
                                std::to_string(std::abs(s.norm_squared() - 1.0)) + ")");
}

// ---------------------------------------------------------------------------
// Hermitian eigendecomposition

struct HermitianEigen {
  Eigen::Matrix<double, Eigen::Dynamic, 1> values;  // ascending
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

/// Symmetrizes before decomposing. Eigen's self-adjoint solver (Householder
/// tridiagonalization + implicit QL) is deterministic for identical input bits.
template <typename Derived>
HermitianEigen hermitian_eigen(const Eigen::MatrixBase<Derived>& m) {
  using Dyn = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>;
  const Dyn h = (m + m.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Dyn> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("Hermitian eigensolver failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// DensityOperator

/// 8x8 Hermitian, unit-trace, positive semidefinite matrix.
class DensityOperator {
 public:
  struct Unchecked {};

  DensityOperator() : matrix_(Matrix8::Zero()) { matrix_(0, 0) = 1.0; }

  explicit DensityOperator(const Matrix8& m) : matrix_(m) {
    if (!m.allFinite()) throw std::invalid_argument("density operator has non-finite entries");
    if (hermiticity_defect(m) > kHermitianTolerance)
      throw std::invalid_argument("density operator is not Hermitian");
    if (std::abs(m.trace() - Complex(1.0)) > kTraceTolerance)
      throw std::invalid_argument("density operator trace differs from 1");
    if (hermitian_eigen(m).values(0) < -kPsdTolerance)
      throw std::invalid_argument("density operator has a negative eigenvalue");
  }

  /// For results of validity-preserving maps (unitary conjugation, convex
  /// mixtures); skips the eigenvalue check.
  DensityOperator(const Matrix8& m, Unchecked) : matrix_(m) {}

  const Matrix8& matrix() const noexcept { return matrix_; }
  Complex operator()(int r, int c) const { return matrix_(r, c); }
  double purity() const { return (matrix_ * matrix_).trace().real(); }

  static DensityOperator maximally_mixed() {
    return {Matrix8::Identity() / double(kDim), Unchecked{}};
  }

 private:
  Matrix8 matrix_;
};

inline DensityOperator density_of(const PureState& state) {
  require_normalized(state);
  const Vector8& a = state.amplitudes();
  return {a * a.adjoint(), DensityOperator::Unchecked{}};
}

// ---------------------------------------------------------------------------
// Bipartition

/// One of the three cuts l|mn, identified by the qubit split from the pair.
class Bipartition {
 public:
  explicit constexpr Bipartition(int solo) : solo_(solo) {
    if (solo < 1 || solo > kQubits) throw std::invalid_argument("bipartition solo qubit must be 1, 2 or 3");
  }
  constexpr int solo() const noexcept { return solo_; }
  constexpr auto operator<=>(const Bipartition&) const = default;

  static constexpr std::array<Bipartition, 3> all() {
    return {Bipartition(1), Bipartition(2), Bipartition(3)};
  }
  std::string name() const {
    static constexpr std::array<std::string_view, 3> names = {"1|23", "2|13", "3|12"};
    return std::string(names[solo_ - 1]);
  }

 private:
  int solo_;
};

/// Reduced 2x2 state of the solo qubit (everything else traced out).
inline Matrix2 partial_trace(const DensityOperator& rho, Bipartition keep) {
  const unsigned mask = qubit_mask(keep.solo());
  Matrix2 out = Matrix2::Zero();
  for (unsigned r = 0; r < kDim; ++r) {
    for (unsigned c = 0; c < kDim; ++c) {
      if ((r & ~mask) != (c & ~mask)) continue;
      out((r & mask) ? 1 : 0, (c & mask) ? 1 : 0) += rho(r, c);
    }
  }
  return out;
}

/// Transposes the solo qubit's indices. Not a density operator in general.
inline Matrix8 partial_transpose(const Matrix8& m, Bipartition part) {
  const unsigned mask = qubit_mask(part.solo());
  Matrix8 out;
  for (unsigned r = 0; r < kDim; ++r) {
    for (unsigned c = 0; c < kDim; ++c) {
      const unsigned r2 = (r & ~mask) | (c & mask);
      const unsigned c2 = (c & ~mask) | (r & mask);
      out(r2, c2) = m(r, c);
    }
  }
  return out;
}

inline Matrix8 partial_transpose(const DensityOperator& rho, Bipartition part) {
  return partial_transpose(rho.matrix(), part);
}

// ---------------------------------------------------------------------------
// Pauli strings

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char to_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': case 'i': case '0': return Pauli::I;
    case 'X': case 'x': case '1': return Pauli::X;
    case 'Y': case 'y': case '2': return Pauli::Y;
    case 'Z': case 'z': case '3': return Pauli::Z;
  }
  throw std::invalid_argument(std::string("not a Pauli label: '") + c + "'");
}

inline Matrix2 pauli_matrix(Pauli p) {
  Matrix2 m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// sigma_a (x) sigma_b (x) sigma_c, label order = qubit order.
class PauliString {
 public:
  constexpr PauliString() = default;
  constexpr PauliString(Pauli q1, Pauli q2, Pauli q3) : labels_{q1, q2, q3} {}

  explicit PauliString(std::string_view text) {
    if (text.size() != 3) throw std::invalid_argument("Pauli string must have three labels: " + std::string(text));
    for (int i = 0; i < 3; ++i) labels_[i] = pauli_from_char(text[i]);
  }

  /// Inverse of index().
  static constexpr PauliString from_index(int index) {
    return {Pauli(index / 16 % 4), Pauli(index / 4 % 4), Pauli(index % 4)};
  }

  constexpr Pauli operator[](int qubit) const { return labels_[qubit - 1]; }
  constexpr const std::array<Pauli, 3>& labels() const noexcept { return labels_; }
  constexpr int index() const noexcept {
    return 16 * int(labels_[0]) + 4 * int(labels_[1]) + int(labels_[2]);
  }
  constexpr int weight() const noexcept {
    int w = 0;
    for (Pauli p : labels_) w += p != Pauli::I;
    return w;
  }
  constexpr bool is_identity() const noexcept { return weight() == 0; }

  /// Exchanges the labels on qubits a and b.
  constexpr PauliString swapped(int a, int b) const {
    PauliString out = *this;
    std::swap(out.labels_[a - 1], out.labels_[b - 1]);
    return out;
  }

  std::string str() const { return {to_char(labels_[0]), to_char(labels_[1]), to_char(labels_[2])}; }

  constexpr auto operator<=>(const PauliString& o) const { return index() <=> o.index(); }
  constexpr bool operator==(const PauliString& o) const { return index() == o.index(); }

 private:
  std::array<Pauli, 3> labels_{Pauli::I, Pauli::I, Pauli::I};
};

/// All 64 strings in index order (III first).
inline const std::array<PauliString, 64>& all_pauli_strings() {
  static const std::array<PauliString, 64> strings = [] {
    std::array<PauliString, 64> s{};
    for (int i = 0; i < 64; ++i) s[i] = PauliString::from_index(i);
    return s;
  }();
  return strings;
}

/// The 63 strings of weight >= 1.
inline std::vector<PauliString> nonidentity_pauli_strings() {
  const auto& all = all_pauli_strings();
  return {all.begin() + 1, all.end()};
}

inline Matrix8 kron3(const Matrix2& a, const Matrix2& b, const Matrix2& c) {
  Matrix8 out;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      out(i, j) = a(i >> 2, j >> 2) * b((i >> 1) & 1, (j >> 1) & 1) * c(i & 1, j & 1);
    }
  }
  return out;
}

inline const Matrix8& pauli_matrix(const PauliString& p) {
  static const std::array<Matrix8, 64> table = [] {
    std::array<Matrix8, 64> t;
    for (int i = 0; i < 64; ++i) {
      const PauliString s = PauliString::from_index(i);
      t[i] = kron3(pauli_matrix(s[1]), pauli_matrix(s[2]), pauli_matrix(s[3]));
    }
    return t;
  }();
  return table[p.index()];
}

/// tr(rho P).
inline double expectation(const DensityOperator& rho, const PauliString& p) {
  return (rho.matrix() * pauli_matrix(p)).trace().real();
}

inline double expectation(const Matrix8& m, const PauliString& p) {
  return (m * pauli_matrix(p)).trace().real();
}

/// <psi|P|psi>.
inline double expectation(const PureState& s, const PauliString& p) {
  return s.amplitudes().dot(pauli_matrix(p) * s.amplitudes()).real();
}

// ---------------------------------------------------------------------------
// ExpectationTable

enum class Provenance { direct, circuit, sampled };

inline std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::direct: return "direct";
    case Provenance::circuit: return "circuit";
    case Provenance::sampled: return "sampled";
  }
  return "unknown";
}

/// Pauli expectations keyed by string, with optional standard errors.
class ExpectationTable {
 public:
  ExpectationTable() = default;
  explicit ExpectationTable(Provenance provenance) : provenance_(provenance) {}

  void set(const PauliString& p, double value, double std_error = 0.0) {
    values_[p] = value;
    errors_[p] = std_error;
  }

  bool contains(const PauliString& p) const { return p.is_identity() || values_.count(p) != 0; }

  /// <III> is always 1 and never stored.
  double at(const PauliString& p) const {
    if (p.is_identity()) return 1.0;
    auto it = values_.find(p);
    if (it == values_.end()) throw std::out_of_range("expectation table has no entry for " + p.str());
    return it->second;
  }

  double std_error(const PauliString& p) const {
    auto it = errors_.find(p);
    return it == errors_.end() ? 0.0 : it->second;
  }

  Provenance provenance() const noexcept { return provenance_; }
  const std::map<PauliString, double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  Provenance provenance_ = Provenance::direct;
  std::map<PauliString, double> values_;
  std::map<PauliString, double> errors_;
};

/// All 63 non-identity expectations computed as tr(rho P).
inline ExpectationTable direct_table(const DensityOperator& rho) {
  ExpectationTable t(Provenance::direct);
  for (const auto& p : nonidentity_pauli_strings()) t.set(p, expectation(rho, p));
  return t;
}

/// (1/8) (I + sum_P <P> P) over the 63 strings in the table.
inline Matrix8 reconstruct_from_expectations(const ExpectationTable& table) {
  Matrix8 m = Matrix8::Identity();
  for (const auto& [p, value] : table.values()) m += value * pauli_matrix(p);
  return m / double(kDim);
}

template <typename Derived>
double trace_norm(const Eigen::MatrixBase<Derived>& hermitian) {
  return hermitian_eigen(hermitian).values.cwiseAbs().sum();
}

inline double trace_distance(const Matrix8& a, const Matrix8& b) { return 0.5 * trace_norm(a - b); }

}  // namespace tripartite
