#pragma once

#include "qenc/distribution.hpp"
#include "qenc/statevec.hpp"
#include "qenc/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qenc {

/// Real data vector with nonzero norm, zero-padded to a power-of-two length.
template <typename Scalar = double>
class DataVector {
 public:
  explicit DataVector(const RVector<Scalar>& values) : original_length_(values.size()) {
    if (values.size() == 0) throw std::invalid_argument("data vector is empty");
    if (!values.allFinite()) throw std::invalid_argument("data vector has non-finite entries");
    if (values.norm() == Scalar(0)) throw std::invalid_argument("data vector has zero norm");
    values_ = zero_pad(values);
  }

  [[nodiscard]] const RVector<Scalar>& values() const { return values_; }
  [[nodiscard]] Index dim() const { return values_.size(); }
  [[nodiscard]] Index original_length() const { return original_length_; }
  [[nodiscard]] bool padded() const { return original_length_ != dim(); }

  /// p_i = x_i² / ‖x‖²; the statistics of the data vector, signs dropped.
  [[nodiscard]] Distribution<Scalar> induced_distribution() const {
    return Distribution<Scalar>(values_.cwiseAbs2() / values_.squaredNorm());
  }

 private:
  RVector<Scalar> values_;
  Index original_length_;
};

/// One phase (radians) per basis state.
template <typename Scalar = double>
using PhaseProfile = RVector<Scalar>;

/// |ψ⟩ = Σ √p_i |i⟩ with the principal (non-negative) root.
template <typename Scalar>
StateVector<Scalar> probability_loading(const Distribution<Scalar>& p) {
  return StateVector<Scalar>(p.probabilities().cwiseSqrt().template cast<Complex<Scalar>>());
}

/// |ψ⟩ = x / ‖x‖ with signs kept.
template <typename Scalar>
StateVector<Scalar> amplitude_encoding(const DataVector<Scalar>& x) {
  return StateVector<Scalar>(x.values().normalized().template cast<Complex<Scalar>>());
}

/// ψ_i = √p_i e^{iφ_i}.
template <typename Scalar>
StateVector<Scalar> phase_encoding(const Distribution<Scalar>& p, const PhaseProfile<Scalar>& phases) {
  if (phases.size() != p.dim()) {
    throw std::invalid_argument("phase profile length " + std::to_string(phases.size()) +
                                " does not match distribution dimension " +
                                std::to_string(p.dim()));
  }
  CVector<Scalar> amps(p.dim());
  for (Index i = 0; i < p.dim(); ++i) amps[i] = std::polar(std::sqrt(p[i]), phases[i]);
  return StateVector<Scalar>(std::move(amps));
}

/// True iff every amplitude has |Im| < tol and Re > -tol.
template <typename Scalar>
bool in_positive_orthant(const StateVector<Scalar>& psi, std::type_identity_t<Scalar> tol) {
  if (!(tol > Scalar(0))) throw std::invalid_argument("orthant tolerance must be positive");
  const auto& a = psi.amplitudes();
  return (a.imag().array().abs() < tol).all() && (a.real().array() > -tol).all();
}

}  // namespace qenc
