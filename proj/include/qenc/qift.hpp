#pragma once

#include "qenc/interference.hpp"
#include "qenc/linalg.hpp"
#include "qenc/statevec.hpp"
#include "qenc/tolerances.hpp"
#include "qenc/types.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qenc {

/// Data-dependent effective Hamiltonian
///
///   H_eff = Σ_j x_j σ_y,j + μ Σ_{j<k} J_jk σ_z,j σ_z,k
///
/// together with the Trotter step τ. `trotter_steps` repeats the symmetric
/// product r times at step τ/r; the default single step is the plain
/// sandwich.
template <typename Scalar = double>
struct HamiltonianSpec {
  RVector<Scalar> x;          // local field strengths, one per qubit
  RMatrix<Scalar> couplings;  // J: symmetric, zero diagonal
  Scalar mu = 1;
  Scalar tau = Scalar(0.1);
  int trotter_steps = 1;

  [[nodiscard]] int n_qubits() const { return static_cast<int>(x.size()); }

  void validate() const {
    const Index n = x.size();
    if (n < 1) throw std::invalid_argument("Hamiltonian needs at least one qubit");
    if (n > kMaxQubits) throw std::invalid_argument("too many qubits for dense evolution");
    if (!x.allFinite()) throw std::invalid_argument("field strengths must be finite");
    if (couplings.rows() != n || couplings.cols() != n) {
      throw std::invalid_argument("coupling matrix must be " + std::to_string(n) + "x" +
                                  std::to_string(n));
    }
    if (!couplings.allFinite()) throw std::invalid_argument("couplings must be finite");
    if (couplings != couplings.transpose()) throw std::invalid_argument("coupling matrix is not symmetric");
    if ((couplings.diagonal().array() != Scalar(0)).any()) {
      throw std::invalid_argument("coupling matrix has a nonzero diagonal");
    }
    if (!std::isfinite(static_cast<double>(mu))) throw std::invalid_argument("mu must be finite");
    if (!(tau > Scalar(0)) || !std::isfinite(static_cast<double>(tau))) {
      throw std::invalid_argument("tau must be positive");
    }
    if (trotter_steps < 1) throw std::invalid_argument("trotter_steps must be >= 1");
  }
};

/// J_{j,j+1 mod n} = 1. Self-loops (n = 1) are dropped.
template <typename Scalar = double>
RMatrix<Scalar> ring_couplings(int n) {
  RMatrix<Scalar> j = RMatrix<Scalar>::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    const int b = (a + 1) % n;
    if (a != b) j(a, b) = j(b, a) = Scalar(1);
  }
  return j;
}

/// All-ones off the diagonal.
template <typename Scalar = double>
RMatrix<Scalar> complete_couplings(int n) {
  RMatrix<Scalar> j = RMatrix<Scalar>::Ones(n, n);
  j.diagonal().setZero();
  return j;
}

/// Σ_j x_j σ_y,j on 2^n amplitudes.
template <typename Scalar>
CMatrix<Scalar> build_h_data(const RVector<Scalar>& x) {
  const int n = static_cast<int>(x.size());
  if (n < 1) throw std::invalid_argument("field vector is empty");
  const Index dim = Index(1) << n;
  CMatrix<Scalar> h = CMatrix<Scalar>::Zero(dim, dim);
  for (int j = 0; j < n; ++j) h += x[j] * pauli_string<Scalar>(n, {{j, Pauli::Y}});
  return h;
}

template <typename Scalar>
void validate_couplings(const RMatrix<Scalar>& couplings) {
  if (couplings.rows() != couplings.cols() || couplings.rows() < 1) {
    throw std::invalid_argument("coupling matrix must be square and nonempty");
  }
  if (couplings != couplings.transpose()) throw std::invalid_argument("coupling matrix is not symmetric");
  if ((couplings.diagonal().array() != Scalar(0)).any()) {
    throw std::invalid_argument("coupling matrix has a nonzero diagonal");
  }
}

/// Diagonal of μ Σ_{j<k} J_jk σ_z,j σ_z,k, evaluated per basis state.
template <typename Scalar>
RVector<Scalar> h_topo_diagonal(const RMatrix<Scalar>& couplings, Scalar mu) {
  validate_couplings(couplings);
  const int n = static_cast<int>(couplings.rows());
  const Index dim = Index(1) << n;
  RVector<Scalar> d = RVector<Scalar>::Zero(dim);
  for (Index b = 0; b < dim; ++b) {
    Scalar e = 0;
    for (int j = 0; j < n; ++j) {
      const int zj = ((b >> bit_position(n, j)) & 1) ? -1 : 1;
      for (int k = j + 1; k < n; ++k) {
        const int zk = ((b >> bit_position(n, k)) & 1) ? -1 : 1;
        e += couplings(j, k) * Scalar(zj * zk);
      }
    }
    d[b] = mu * e;
  }
  return d;
}

/// μ Σ_{j<k} J_jk σ_z,j σ_z,k as a dense operator built from Pauli strings.
template <typename Scalar>
CMatrix<Scalar> build_h_topo(const RMatrix<Scalar>& couplings, std::type_identity_t<Scalar> mu) {
  validate_couplings(couplings);
  const int n = static_cast<int>(couplings.rows());
  const Index dim = Index(1) << n;
  CMatrix<Scalar> h = CMatrix<Scalar>::Zero(dim, dim);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (couplings(j, k) != Scalar(0))
        h += (mu * couplings(j, k)) * pauli_string<Scalar>(n, {{j, Pauli::Z}, {k, Pauli::Z}});
  return h;
}

template <typename Scalar>
CMatrix<Scalar> build_h_eff(const HamiltonianSpec<Scalar>& spec) {
  spec.validate();
  return build_h_data(spec.x) + build_h_topo(spec.couplings, spec.mu);
}

/// Dense symmetric product for an arbitrary real step (negative steps run
/// the product backwards in time). Every factor goes through the Hermitian
/// eigensolver.
template <typename Scalar>
CMatrix<Scalar> sandwich_unitary_at(const HamiltonianSpec<Scalar>& spec, std::type_identity_t<Scalar> tau) {
  const CMatrix<Scalar> h_data = build_h_data(spec.x);
  const CMatrix<Scalar> h_topo = build_h_topo(spec.couplings, spec.mu);
  const Scalar step = tau / Scalar(spec.trotter_steps);
  const CMatrix<Scalar> half = evolve(h_data, step / Scalar(2));
  const CMatrix<Scalar> single = half * evolve(h_topo, step) * half;
  CMatrix<Scalar> u = single;
  for (int r = 1; r < spec.trotter_steps; ++r) u = single * u;
  return u;
}

/// e^{-i(τ/2)H_data} e^{-iτH_topo} e^{-i(τ/2)H_data}, dense.
template <typename Scalar>
CMatrix<Scalar> sandwich_unitary(const HamiltonianSpec<Scalar>& spec) {
  spec.validate();
  return sandwich_unitary_at(spec, spec.tau);
}

/// Applies the sandwich to every column of `amps` in place using per-qubit
/// y-rotations R_y(τ x_j) around an elementwise diagonal phase.
template <typename Scalar, typename Derived>
void apply_sandwich(const HamiltonianSpec<Scalar>& spec, std::type_identity_t<Scalar> tau,
                    Eigen::MatrixBase<Derived>& amps) {
  const int n = spec.n_qubits();
  if (amps.rows() != (Index(1) << n)) throw std::invalid_argument("amplitude block has wrong dimension");
  const Scalar step = tau / Scalar(spec.trotter_steps);
  const CVector<Scalar> phase = evolve_diagonal(h_topo_diagonal(spec.couplings, spec.mu), step);

  std::vector<Eigen::Matrix<Complex<Scalar>, 2, 2>> rotations;
  rotations.reserve(static_cast<std::size_t>(n));
  // e^{-i(step/2) x_j σ_y} = R_y(step x_j)
  for (int j = 0; j < n; ++j) rotations.push_back(ry_gate<Scalar>(step * spec.x[j]));

  for (int r = 0; r < spec.trotter_steps; ++r) {
    for (int j = 0; j < n; ++j) apply_single_qubit_gate<Scalar>(amps, n, j, rotations[static_cast<std::size_t>(j)]);
    amps = phase.asDiagonal() * amps;
    for (int j = 0; j < n; ++j) apply_single_qubit_gate<Scalar>(amps, n, j, rotations[static_cast<std::size_t>(j)]);
  }
}

/// Sandwich built from the gate kernels instead of dense exponentials.
template <typename Scalar>
CMatrix<Scalar> sandwich_unitary_factorized_at(const HamiltonianSpec<Scalar>& spec,
                                               std::type_identity_t<Scalar> tau) {
  const Index dim = Index(1) << spec.n_qubits();
  CMatrix<Scalar> u = CMatrix<Scalar>::Identity(dim, dim);
  apply_sandwich(spec, tau, u);
  return u;
}

template <typename Scalar>
CMatrix<Scalar> sandwich_unitary_factorized(const HamiltonianSpec<Scalar>& spec) {
  spec.validate();
  return sandwich_unitary_factorized_at(spec, spec.tau);
}

/// e^{-iτ(H_data + H_topo)}.
template <typename Scalar>
CMatrix<Scalar> exact_unitary(const HamiltonianSpec<Scalar>& spec) {
  return evolve(build_h_eff(spec), spec.tau);
}

/// ‖[H_data, H_topo]‖ in the spectral norm.
template <typename Scalar>
Scalar commutator_norm(const HamiltonianSpec<Scalar>& spec) {
  spec.validate();
  return spectral_norm(commutator(build_h_data(spec.x), build_h_topo(spec.couplings, spec.mu)));
}

/// Sandwich applied to |0…0⟩.
template <typename Scalar>
StateVector<Scalar> evolve_vacuum(const HamiltonianSpec<Scalar>& spec) {
  spec.validate();
  CVector<Scalar> psi = CVector<Scalar>::Zero(Index(1) << spec.n_qubits());
  psi[0] = Scalar(1);
  apply_sandwich(spec, spec.tau, psi);
  return StateVector<Scalar>(std::move(psi));
}

enum class CurvatureStatus {
  fitted,       // slope available
  commuting,    // [H_data, H_topo] = 0: the sandwich is exact, no curvature
  below_floor,  // non-commuting, but every error is at rounding level
};

inline const char* to_string(CurvatureStatus s) {
  switch (s) {
    case CurvatureStatus::fitted: return "fitted";
    case CurvatureStatus::commuting: return "commuting: no curvature";
    case CurvatureStatus::below_floor: return "below floor: errors at rounding level";
  }
  return "unknown";
}

/// Trotter error ‖U_sand(τ) - e^{-iτH}‖ over a τ grid, with the log-log
/// slope fitted where the errors rise above the rounding floor.
template <typename Scalar>
struct CurvatureScan {
  std::vector<Scalar> taus;    // strictly descending
  std::vector<Scalar> errors;
  std::optional<Scalar> fitted_slope;
  Scalar fit_residual = 0;     // RMS residual of the log-log fit
  Scalar commutator_norm = 0;
  CurvatureStatus status = CurvatureStatus::commuting;
};

/// 13 log-spaced points from 1e-1 down to 1e-3.
template <typename Scalar = double>
std::vector<Scalar> default_tau_grid(int points = 13, Scalar hi = Scalar(1e-1), Scalar lo = Scalar(1e-3)) {
  if (points < 2 || !(lo > 0) || !(hi > lo)) throw std::invalid_argument("invalid tau grid");
  std::vector<Scalar> taus;
  const Scalar a = std::log10(hi);
  const Scalar b = std::log10(lo);
  for (int k = 0; k < points; ++k) taus.push_back(std::pow(Scalar(10), a + (b - a) * Scalar(k) / Scalar(points - 1)));
  return taus;
}

/// Least-squares slope of log(err) against log(tau); returns {slope, rms}.
template <typename Scalar>
std::pair<Scalar, Scalar> loglog_fit(std::span<const Scalar> taus, std::span<const Scalar> errors) {
  const std::size_t m = taus.size();
  if (m < 2 || errors.size() != m) throw std::invalid_argument("fit needs at least two points");
  Scalar mx = 0, my = 0;
  for (std::size_t k = 0; k < m; ++k) {
    mx += std::log(taus[k]);
    my += std::log(errors[k]);
  }
  mx /= Scalar(m);
  my /= Scalar(m);
  Scalar sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const Scalar dx = std::log(taus[k]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[k]) - my);
  }
  const Scalar slope = sxy / sxx;
  Scalar ss = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const Scalar r = std::log(errors[k]) - (my + slope * (std::log(taus[k]) - mx));
    ss += r * r;
  }
  return {slope, std::sqrt(ss / Scalar(m))};
}

/// Scans the Trotter error of `spec` (its own τ is ignored) over `taus`.
/// Needs at least 5 distinct positive steps spanning 1.5 decades.
template <typename Scalar>
CurvatureScan<Scalar> information_curvature(const HamiltonianSpec<Scalar>& spec,
                                            std::vector<Scalar> taus,
                                            OperatorNorm norm = OperatorNorm::spectral,
                                            const Tolerances& tol = kDefaultTolerances) {
  spec.validate();
  if (taus.size() < 5) throw std::invalid_argument("curvature scan needs at least 5 tau values");
  for (Scalar t : taus)
    if (!(t > 0) || !std::isfinite(static_cast<double>(t))) throw std::invalid_argument("tau values must be positive");
  std::sort(taus.begin(), taus.end(), std::greater<>());
  if (std::adjacent_find(taus.begin(), taus.end()) != taus.end()) {
    throw std::invalid_argument("tau values must be distinct");
  }
  if (std::log10(taus.front() / taus.back()) < Scalar(1.5)) {
    throw std::invalid_argument("tau values must span at least 1.5 decades");
  }

  CurvatureScan<Scalar> scan;
  scan.commutator_norm = commutator_norm(spec);
  const bool commuting = static_cast<double>(scan.commutator_norm) < tol.curvature_floor;

  const CMatrix<Scalar> h_eff = build_h_eff(spec);
  const SpectralDecomposition<Scalar> dec = hermitian_spectral_decomposition(h_eff, tol);
  std::vector<Scalar> fit_taus, fit_errors;
  for (Scalar t : taus) {
    const Scalar err = operator_distance(sandwich_unitary_at(spec, t), evolve(dec, t), norm);
    scan.taus.push_back(t);
    scan.errors.push_back(err);
    if (static_cast<double>(err) > tol.curvature_floor) {
      fit_taus.push_back(t);
      fit_errors.push_back(err);
    }
  }

  if (commuting) {
    scan.status = CurvatureStatus::commuting;
  } else if (fit_taus.size() < 2) {
    scan.status = CurvatureStatus::below_floor;
  } else {
    const auto [slope, rms] = loglog_fit<Scalar>(fit_taus, fit_errors);
    scan.fitted_slope = slope;
    scan.fit_residual = rms;
    scan.status = CurvatureStatus::fitted;
  }
  return scan;
}

}  // namespace qenc
