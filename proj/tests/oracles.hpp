#pragma once

// Independent reference computations for tests. Everything here works on raw
// amplitude arrays with std::complex loops and never calls into the library's
// matrix paths.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "tripartite/qcore.hpp"

namespace oracle {

using C = std::complex<double>;
using Amps = std::array<C, 8>;

inline Amps amps(const tripartite::PureState& s) {
  Amps a;
  for (int i = 0; i < 8; ++i) a[i] = s[i];
  return a;
}

inline int bit(int index, int qubit) { return (index >> (3 - qubit)) & 1; }

/// P|psi> applied label by label on the amplitude vector.
inline Amps apply_pauli(const Amps& a, const std::string& labels) {
  Amps out{};
  for (int i = 0; i < 8; ++i) {
    int j = i;
    C phase = 1.0;
    for (int q = 1; q <= 3; ++q) {
      const char l = labels[q - 1];
      const int b = bit(i, q);
      if (l == 'X' || l == 'Y') j ^= 1 << (3 - q);
      if (l == 'Y') phase *= b ? C(0, -1) : C(0, 1);
      if (l == 'Z' && b) phase *= -1.0;
    }
    out[j] += phase * a[i];
  }
  return out;
}

inline double expectation(const Amps& a, const std::string& labels) {
  const Amps pa = apply_pauli(a, labels);
  C sum = 0.0;
  for (int i = 0; i < 8; ++i) sum += std::conj(a[i]) * pa[i];
  return sum.real();
}

/// Reduced 2x2 state of qubit `solo`.
inline std::array<std::array<C, 2>, 2> reduced(const Amps& a, int solo) {
  std::array<std::array<C, 2>, 2> r{};
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      bool same_rest = true;
      for (int q = 1; q <= 3; ++q)
        if (q != solo && bit(i, q) != bit(j, q)) same_rest = false;
      if (same_rest) r[bit(i, solo)][bit(j, solo)] += a[i] * std::conj(a[j]);
    }
  return r;
}

/// det(rho_solo) = (1 - tr rho_solo^2)/2.
inline double concurrence_sq(const Amps& a, int solo) {
  const auto r = reduced(a, solo);
  return (r[0][0] * r[1][1] - r[0][1] * r[1][0]).real();
}

inline std::array<double, 2> reduced_eigenvalues(const Amps& a, int solo) {
  const auto r = reduced(a, solo);
  const double tr = (r[0][0] + r[1][1]).real();
  const double det = (r[0][0] * r[1][1] - r[0][1] * r[1][0]).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  return {tr / 2 - disc, tr / 2 + disc};
}

/// Pure-state negativity from the Schmidt coefficients of the cut.
inline double negativity_pure(const Amps& a, int solo) {
  const auto l = reduced_eigenvalues(a, solo);
  const double s = std::sqrt(std::max(0.0, l[0])) + std::sqrt(std::max(0.0, l[1]));
  return (s * s - 1.0) / 2.0;
}

/// 3-tangle via the epsilon-tensor contraction
///   tau = 2 |sum a_ijk a_i'j'm a_npk' a_n'p'm' e_ii' e_jj' e_kk' e_mm' e_nn' e_pp'|
/// brute-forced over all 2^12 index assignments.
inline double tangle_eps(const Amps& a) {
  auto eps = [](int x, int y) { return x == y ? 0.0 : (x == 0 ? 1.0 : -1.0); };
  auto A = [&a](int i, int j, int k) { return a[4 * i + 2 * j + k]; };
  C sum = 0.0;
  for (int m = 0; m < 4096; ++m) {
    int b[12];
    for (int t = 0; t < 12; ++t) b[t] = (m >> t) & 1;
    const int i = b[0], i2 = b[1], j = b[2], j2 = b[3], k = b[4], k2 = b[5];
    const int mm = b[6], mm2 = b[7], n = b[8], n2 = b[9], p = b[10], p2 = b[11];
    const double e = eps(i, i2) * eps(j, j2) * eps(k, k2) * eps(mm, mm2) * eps(n, n2) * eps(p, p2);
    if (e == 0.0) continue;
    sum += e * A(i, j, k) * A(i2, j2, mm) * A(n, p, k2) * A(n2, p2, mm2);
  }
  return 2.0 * std::abs(sum);
}

/// Strings whose expectation is identically zero on every canonical generic
/// state: every nonzero matrix element linking two support indices is purely
/// imaginary and joins two real amplitudes (the |100> amplitude carries the
/// only phase), so each pair contributes 2 Re(real * i * real) = 0.
inline std::vector<std::string> generic_structural_zeros() {
  const std::array<int, 5> support = {0b000, 0b100, 0b101, 0b110, 0b111};
  std::vector<std::string> zeros;
  const std::string labels = "IXYZ";
  for (int idx = 1; idx < 64; ++idx) {
    const std::string s = {labels[idx / 16], labels[idx / 4 % 4], labels[idx % 4]};
    bool vanishes = true;
    for (int i : support) {
      Amps e{};
      e[i] = 1.0;
      const Amps col = apply_pauli(e, s);
      for (int j : support) {
        const C element = col[j];  // <j|P|i>
        if (std::abs(element) == 0.0) continue;
        const bool real_pair = (i != 0b100 && j != 0b100) || i == j;
        if (!(real_pair && element.real() == 0.0)) vanishes = false;
      }
    }
    if (vanishes) zeros.push_back(s);
  }
  return zeros;
}

}  // namespace oracle
