#pragma once

#include "qenc/distribution.hpp"
#include "qenc/encoders.hpp"
#include "qenc/linalg.hpp"
#include "qenc/statevec.hpp"
#include "qenc/tolerances.hpp"
#include "qenc/types.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace qenc {

/// One cross term √(p_x p_x') e^{i(φ_x - φ_x')} U_yx U*_yx' with x < x'. The
/// mirrored term (x', x) is its conjugate, so the pair contributes
/// 2 Re(value) to the outcome probability.
template <typename Scalar>
struct PairTerm {
  Index x;
  Index x_prime;
  Complex<Scalar> value;

  [[nodiscard]] Scalar pair_sum() const { return Scalar(2) * value.real(); }
};

/// Born probability of one outcome split into its classical mixture and
/// interference parts.
template <typename Scalar>
struct InterferenceReport {
  Index outcome = 0;
  Scalar classical_term = 0;
  Scalar interference_term = 0;  // real part of the ordered double sum
  Scalar interference_imag = 0;  // imaginary part of the same sum; zero up to rounding
  Scalar total = 0;              // Born probability from U applied to the encoded state
  std::vector<PairTerm<Scalar>> pairs;

  [[nodiscard]] Scalar identity_residual() const {
    return std::abs(classical_term + interference_term - total);
  }
};

namespace detail {

template <typename Scalar>
CVector<Scalar> encoded_weights(const Distribution<Scalar>& p,
                                const std::optional<PhaseProfile<Scalar>>& phases) {
  if (phases) return phase_encoding(p, *phases).amplitudes();
  return probability_loading(p).amplitudes();
}

template <typename Scalar>
void check_decomposition_inputs(const CMatrix<Scalar>& u, const Distribution<Scalar>& p,
                                const Tolerances& tol) {
  require_square(u, "unitary");
  if (u.rows() != p.dim()) {
    throw std::invalid_argument("unitary dimension " + std::to_string(u.rows()) +
                                " does not match distribution dimension " +
                                std::to_string(p.dim()));
  }
  require_unitary(u, tol);
}

template <typename Scalar>
InterferenceReport<Scalar> decompose_outcome(const CMatrix<Scalar>& u, const Distribution<Scalar>& p,
                                             const CVector<Scalar>& weights, Index y,
                                             Scalar born_total) {
  const Index n = p.dim();
  InterferenceReport<Scalar> report;
  report.outcome = y;
  report.total = born_total;

  CVector<Scalar> a(n);  // a_x = U_yx w_x
  for (Index x = 0; x < n; ++x) {
    report.classical_term += p[x] * std::norm(u(y, x));
    a[x] = u(y, x) * weights[x];
  }

  // The ordered double sum over x != x', evaluated term by term.
  Complex<Scalar> cross(0);
  for (Index x = 0; x < n; ++x) {
    for (Index xp = 0; xp < n; ++xp) {
      if (x == xp) continue;
      const Complex<Scalar> term = a[x] * std::conj(a[xp]);
      cross += term;
      if (x < xp) report.pairs.push_back({x, xp, term});
    }
  }
  report.interference_term = cross.real();
  report.interference_imag = cross.imag();
  return report;
}

}  // namespace detail

/// Splits P(y) = |⟨y|U|ψ⟩|² for the (optionally phase-modulated) loaded
/// state into Σ_x p_x|U_yx|² plus the cross terms. Without phases this is
/// the phase-locked √P state.
template <typename Scalar>
InterferenceReport<Scalar> interference_decomposition(
    const CMatrix<Scalar>& u, const Distribution<Scalar>& p,
    const std::type_identity_t<std::optional<PhaseProfile<Scalar>>>& phases, Index y,
    const Tolerances& tol = kDefaultTolerances) {
  detail::check_decomposition_inputs(u, p, tol);
  if (y < 0 || y >= p.dim()) throw std::out_of_range("outcome index out of range");
  const CVector<Scalar> w = detail::encoded_weights(p, phases);
  const StateVector<Scalar> out = apply_unitary(u, StateVector<Scalar>(w), tol);
  return detail::decompose_outcome(u, p, w, y, std::norm(out[y]));
}

/// Decomposition for every outcome y.
template <typename Scalar>
std::vector<InterferenceReport<Scalar>> interference_decomposition_all(
    const CMatrix<Scalar>& u, const Distribution<Scalar>& p,
    const std::type_identity_t<std::optional<PhaseProfile<Scalar>>>& phases,
    const Tolerances& tol = kDefaultTolerances) {
  detail::check_decomposition_inputs(u, p, tol);
  const CVector<Scalar> w = detail::encoded_weights(p, phases);
  const Distribution<Scalar> born = born_probabilities(apply_unitary(u, StateVector<Scalar>(w), tol), tol);
  std::vector<InterferenceReport<Scalar>> reports;
  reports.reserve(static_cast<std::size_t>(p.dim()));
  for (Index y = 0; y < p.dim(); ++y) reports.push_back(detail::decompose_outcome(u, p, w, y, born[y]));
  return reports;
}

template <typename Scalar>
struct SignLockReport {
  bool locked = false;
  Scalar spread = 0;               // max - min of arguments relative to the first sample
  std::vector<Scalar> arguments;   // arg of the pair term per sample, in (-π, π]
};

namespace detail {

template <typename Scalar>
Complex<Scalar> pair_term(const CMatrix<Scalar>& u, Index y, Index x, Index xp,
                          const Distribution<Scalar>& p, Scalar phase_difference) {
  const Scalar weight = std::sqrt(p[x] * p[xp]);
  const Complex<Scalar> mix = u(y, x) * std::conj(u(y, xp));
  if (!(weight > Scalar(0)) || std::abs(mix) == Scalar(0)) {
    throw std::invalid_argument("pair term (" + std::to_string(x) + ", " + std::to_string(xp) +
                                ") vanishes; its argument is undefined");
  }
  return weight * std::polar(Scalar(1), phase_difference) * mix;
}

template <typename Scalar>
SignLockReport<Scalar> summarize_arguments(const std::vector<Complex<Scalar>>& terms,
                                           const Tolerances& tol) {
  SignLockReport<Scalar> report;
  Scalar lo = 0;
  Scalar hi = 0;
  for (const auto& t : terms) {
    report.arguments.push_back(std::arg(t));
    const Scalar rel = std::arg(t * std::conj(terms.front()));
    lo = std::min(lo, rel);
    hi = std::max(hi, rel);
  }
  report.spread = hi - lo;
  report.locked = static_cast<double>(report.spread) < tol.sign_lock;
  return report;
}

template <typename Scalar>
void check_pair(const CMatrix<Scalar>& u, Index y, Index x, Index xp) {
  require_square(u, "unitary");
  const Index n = u.rows();
  if (y < 0 || y >= n || x < 0 || x >= n || xp < 0 || xp >= n) {
    throw std::out_of_range("basis index out of range");
  }
  if (x == xp) throw std::invalid_argument("pair indices must differ");
}

}  // namespace detail

/// Phase-locked inputs: checks that the argument of the (x, x') cross term
/// at outcome y is the same for every distribution. The data only rescale
/// its magnitude.
template <typename Scalar>
SignLockReport<Scalar> sign_lock_check(const CMatrix<Scalar>& u, Index y, Index x, Index x_prime,
                                       std::type_identity_t<std::span<const Distribution<Scalar>>> distributions,
                                       const Tolerances& tol = kDefaultTolerances) {
  detail::check_pair(u, y, x, x_prime);
  if (distributions.empty()) throw std::invalid_argument("no distributions supplied");
  std::vector<Complex<Scalar>> terms;
  for (const auto& p : distributions) {
    if (p.dim() != u.rows()) throw std::invalid_argument("distribution dimension mismatch");
    terms.push_back(detail::pair_term(u, y, x, x_prime, p, Scalar(0)));
  }
  return detail::summarize_arguments(terms, tol);
}

/// Same check with the distribution fixed and the phase profile varying.
template <typename Scalar>
SignLockReport<Scalar> sign_lock_check(const CMatrix<Scalar>& u, Index y, Index x, Index x_prime,
                                       const Distribution<Scalar>& p,
                                       std::type_identity_t<std::span<const PhaseProfile<Scalar>>> phases,
                                       const Tolerances& tol = kDefaultTolerances) {
  detail::check_pair(u, y, x, x_prime);
  if (phases.empty()) throw std::invalid_argument("no phase profiles supplied");
  if (p.dim() != u.rows()) throw std::invalid_argument("distribution dimension mismatch");
  std::vector<Complex<Scalar>> terms;
  for (const auto& phi : phases) {
    if (phi.size() != p.dim()) throw std::invalid_argument("phase profile length mismatch");
    terms.push_back(detail::pair_term(u, y, x, x_prime, p, phi[x] - phi[x_prime]));
  }
  return detail::summarize_arguments(terms, tol);
}

/// max_i | |⟨i|D|√P⟩|² - p_i | for a diagonal unitary D.
template <typename Scalar>
Scalar diagonal_trap_residual(const Distribution<Scalar>& p, const CMatrix<Scalar>& d,
                              const Tolerances& tol = kDefaultTolerances) {
  require_square(d, "diagonal operator");
  if (d.rows() != p.dim()) throw std::invalid_argument("operator dimension mismatch");
  CMatrix<Scalar> off = d;
  off.diagonal().setZero();
  if (static_cast<double>(off.cwiseAbs().maxCoeff()) > tol.hermiticity) {
    throw std::invalid_argument("operator is not diagonal");
  }
  require_unitary(d, tol);
  const CVector<Scalar> out = d * probability_loading(p).amplitudes();
  return (out.cwiseAbs2() - p.probabilities()).cwiseAbs().maxCoeff();
}

/// [A, B] = AB - BA.
template <typename Scalar>
CMatrix<Scalar> commutator(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b) {
  require_square(a, "operator");
  require_same_shape(a, b);
  return a * b - b * a;
}

template <typename Scalar>
struct PairSign {
  Index x;
  Index x_prime;
  Scalar real_part;  // pair-summed contribution 2 Re(term)
  int sign;          // -1, 0, +1
};

template <typename Scalar>
struct PairSignReport {
  Index outcome = 0;
  std::vector<PairSign<Scalar>> pairs;
  bool any_negative = false;
};

/// Sign of every phase-locked cross term at outcome y. With φ ≡ 0 the sign
/// of a pair is that of Re(U_yx U*_yx'), whatever P is.
template <typename Scalar>
PairSignReport<Scalar> pairwise_term_signs(const CMatrix<Scalar>& u, const Distribution<Scalar>& p,
                                           Index y, std::type_identity_t<Scalar> zero_tol = Scalar(1e-12),
                                           const Tolerances& tol = kDefaultTolerances) {
  const auto rep = interference_decomposition<Scalar>(u, p, std::nullopt, y, tol);
  PairSignReport<Scalar> out;
  out.outcome = y;
  for (const auto& t : rep.pairs) {
    const Scalar re = t.pair_sum();
    const int sign = std::abs(re) <= zero_tol ? 0 : (re > 0 ? 1 : -1);
    out.pairs.push_back({t.x, t.x_prime, re, sign});
    out.any_negative = out.any_negative || sign < 0;
  }
  return out;
}

}  // namespace qenc
