#pragma once

// Pauli-expectation state tomography and a depolarizing noise model.

#include <optional>
#include <stdexcept>

#include "tripartite/circuits.hpp"
#include "tripartite/measures.hpp"
#include "tripartite/qcore.hpp"

namespace tripartite {

struct NoiseSpec {
  double depolarizing_p = 0.0;
  std::optional<std::uint64_t> shots;  // nullopt = exact expectations
  Seed seed = 0;

  void validate() const {
    if (!(depolarizing_p >= 0.0 && depolarizing_p <= 1.0)) throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
    if (shots && *shots == 0) throw std::invalid_argument("shot count must be positive");
  }
  bool noiseless() const { return depolarizing_p == 0.0 && !shots; }
  ShotConfig shot_config() const { return {shots, seed}; }
};

/// (1 - p) rho + p I/8.
inline DensityOperator depolarize(const DensityOperator& rho, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarizing strength must lie in [0, 1]");
  return {(1.0 - p) * rho.matrix() + p / kDim * Matrix8::Identity(), DensityOperator::Unchecked{}};
}

/// Depolarizing strength that brings a rank-1 state down to fidelity F:
/// F = (1 - p) + p/8.
inline double depolarizing_for_fidelity(double target) {
  if (!(target >= 1.0 / kDim && target <= 1.0))
    throw std::invalid_argument("fidelity target must lie in [1/8, 1]");
  return 8.0 * (1.0 - target) / 7.0;
}

/// Clips negative eigenvalues and renormalizes to unit trace.
inline DensityOperator project_physical(const Matrix8& m) {
  if (!m.allFinite()) throw std::invalid_argument("cannot project a matrix with non-finite entries");
  if (hermiticity_defect(m) > 1e-9) throw std::invalid_argument("physical projection needs a Hermitian input");
  const auto eig = hermitian_eigen(m);
  Eigen::Matrix<double, Eigen::Dynamic, 1> clipped = eig.values.cwiseMax(0.0);
  const double total = clipped.sum();
  if (!(total > 0.0)) throw std::invalid_argument("no positive eigenvalues left after clipping");
  clipped /= total;
  Matrix8 out = eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
  out = (out + out.adjoint()).eval() * 0.5;
  return {out, DensityOperator::Unchecked{}};
}

struct TomographyResult {
  DensityOperator rho_est;
  Matrix8 rho_raw;
  ExpectationTable raw_expectations;
  double projection_distance = 0.0;  // trace norm of (rho_est - rho_raw)
};

/// Depolarizes rho, measures all 63 strings through the mapping circuits,
/// reconstructs linearly and projects onto the physical set.
inline TomographyResult tomograph(const DensityOperator& rho, const NoiseSpec& noise) {
  noise.validate();
  const DensityOperator prepared = noise.depolarizing_p > 0.0 ? depolarize(rho, noise.depolarizing_p) : rho;
  ExpectationTable table = measure_table(prepared, noise.shot_config());
  const Matrix8 raw = reconstruct_from_expectations(table);
  DensityOperator est = project_physical(raw);
  const double distance = trace_norm(est.matrix() - raw);
  return {std::move(est), raw, std::move(table), distance};
}

}  // namespace tripartite
