#pragma once

#include "qenc/linalg.hpp"
#include "qenc/qift.hpp"
#include "qenc/statevec.hpp"
#include "qenc/tolerances.hpp"
#include "qenc/types.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <type_traits>
#include <vector>

namespace qenc {

template <typename Scalar>
struct SpectralProfile {
  RVector<Scalar> eigenvalues;  // ascending
  Scalar mass_gap = 0;          // λ₁ - λ₀, or 0 when degenerate
  Scalar degeneracy_tol = 0;
  bool degenerate_ground = false;
};

/// Gap of an ascending spectrum; splittings below `degeneracy_tol` count as 0.
template <typename Scalar>
std::pair<Scalar, bool> lowest_gap(const RVector<Scalar>& eigenvalues, Scalar degeneracy_tol) {
  if (eigenvalues.size() < 2) throw std::invalid_argument("spectrum has fewer than two levels");
  const Scalar gap = eigenvalues[1] - eigenvalues[0];
  if (gap < degeneracy_tol) return {Scalar(0), true};
  return {gap, false};
}

/// Full spectrum and mass gap of an arbitrary Hermitian operator.
template <typename Scalar>
SpectralProfile<Scalar> spectral_profile(const CMatrix<Scalar>& h,
                                         const Tolerances& tol = kDefaultTolerances) {
  SpectralProfile<Scalar> out;
  out.eigenvalues = hermitian_spectral_decomposition(h, tol).eigenvalues;
  out.degeneracy_tol = Scalar(tol.degeneracy);
  std::tie(out.mass_gap, out.degenerate_ground) = lowest_gap(out.eigenvalues, out.degeneracy_tol);
  return out;
}

/// Spectrum and mass gap of H_data + H_topo.
template <typename Scalar>
SpectralProfile<Scalar> spectral_profile(const HamiltonianSpec<Scalar>& spec,
                                         const Tolerances& tol = kDefaultTolerances) {
  return spectral_profile(build_h_eff(spec), tol);
}

/// Σ_j σ_z,j as a diagonal.
template <typename Scalar = double>
RVector<Scalar> zeeman_diagonal(int n_qubits) {
  const Index dim = Index(1) << n_qubits;
  RVector<Scalar> d(dim);
  for (Index b = 0; b < dim; ++b) {
    const int ones = std::popcount(static_cast<std::uint64_t>(b));
    d[b] = Scalar(n_qubits - 2 * ones);
  }
  return d;
}

/// Gap of H_eff + ε Σ_j σ_z,j across a grid of ε. The ε = 0 point is the
/// reference for stability_score = max |gap(ε) - gap(0)|. The score is a
/// proxy for how robust the gap is, not a phase-transition detector.
template <typename Scalar>
struct ZeemanTrace {
  std::vector<Scalar> epsilons;
  std::vector<Scalar> gaps;
  Scalar stability_score = 0;
};

template <typename Scalar>
ZeemanTrace<Scalar> zeeman_sweep(const HamiltonianSpec<Scalar>& spec, const std::vector<Scalar>& epsilons,
                                 const Tolerances& tol = kDefaultTolerances) {
  if (epsilons.empty()) throw std::invalid_argument("Zeeman sweep needs at least one epsilon");
  const auto zero = std::find(epsilons.begin(), epsilons.end(), Scalar(0));
  if (zero == epsilons.end()) throw std::invalid_argument("Zeeman grid must contain epsilon = 0");

  const CMatrix<Scalar> h = build_h_eff(spec);
  const RVector<Scalar> field = zeeman_diagonal<Scalar>(spec.n_qubits());
  ZeemanTrace<Scalar> trace;
  trace.epsilons = epsilons;
  for (Scalar eps : epsilons) {
    CMatrix<Scalar> perturbed = h;
    perturbed.diagonal() += (eps * field).template cast<Complex<Scalar>>();
    trace.gaps.push_back(spectral_profile(perturbed, tol).mass_gap);
  }
  const Scalar reference = trace.gaps[static_cast<std::size_t>(zero - epsilons.begin())];
  for (Scalar g : trace.gaps) trace.stability_score = std::max(trace.stability_score, std::abs(g - reference));
  return trace;
}

/// Gap-coincidence verdict. Only the lowest gaps decide; the full-spectrum
/// distance (max |λ_a,k - λ_b,k|, present when dimensions agree) is
/// auxiliary.
template <typename Scalar>
struct ResonanceVerdict {
  Scalar gap_a = 0;
  Scalar gap_b = 0;
  Scalar delta = 0;
  bool resonant = false;
  Scalar tolerance = 0;
  std::optional<Scalar> spectrum_distance;
};

template <typename Scalar>
ResonanceVerdict<Scalar> resonance_verdict(const SpectralProfile<Scalar>& a, const SpectralProfile<Scalar>& b,
                                           std::type_identity_t<Scalar> tolerance) {
  if (!(tolerance > Scalar(0))) throw std::invalid_argument("resonance tolerance must be positive");
  ResonanceVerdict<Scalar> v;
  v.gap_a = a.mass_gap;
  v.gap_b = b.mass_gap;
  v.delta = std::abs(v.gap_a - v.gap_b);
  v.tolerance = tolerance;
  v.resonant = v.delta <= tolerance;
  if (a.eigenvalues.size() == b.eigenvalues.size()) {
    v.spectrum_distance = (a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff();
  }
  return v;
}

template <typename Scalar>
ResonanceVerdict<Scalar> resonance_similarity(const HamiltonianSpec<Scalar>& a, const HamiltonianSpec<Scalar>& b,
                                              std::type_identity_t<Scalar> tolerance,
                                              const Tolerances& tol = kDefaultTolerances) {
  return resonance_verdict(spectral_profile(a, tol), spectral_profile(b, tol), tolerance);
}

/// Geometric-overlap baseline |⟨a|b⟩|².
template <typename Scalar>
Scalar overlap_similarity(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
  return fidelity(a, b);
}

}  // namespace qenc
