#pragma once

#include "qenc/tolerances.hpp"
#include "qenc/types.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qenc {

/// Zero-pads `values` to the next power of two (at least 2).
template <typename Derived>
RVector<typename Derived::Scalar> zero_pad(const Eigen::MatrixBase<Derived>& values) {
  using Scalar = typename Derived::Scalar;
  RVector<Scalar> out = RVector<Scalar>::Zero(padded_dimension(values.size()));
  out.head(values.size()) = values;
  return out;
}

/// Classical probability distribution over 2^n outcomes.
///
/// Inputs whose length is not a power of two are zero-padded; the unpadded
/// length stays available through original_length(). Sums within
/// `distribution_sum` of 1 are renormalized, larger deviations throw.
template <typename Scalar = double>
class Distribution {
 public:
  explicit Distribution(const RVector<Scalar>& probabilities,
                        const Tolerances& tol = kDefaultTolerances)
      : original_length_(probabilities.size()) {
    if (probabilities.size() == 0) {
      throw std::invalid_argument("distribution is empty");
    }
    for (Index i = 0; i < probabilities.size(); ++i) {
      if (!std::isfinite(static_cast<double>(probabilities[i]))) {
        throw std::invalid_argument("distribution entry " + std::to_string(i) +
                                    " is not finite");
      }
      if (probabilities[i] < Scalar(0)) {
        throw std::invalid_argument("distribution entry " + std::to_string(i) +
                                    " is negative");
      }
    }
    const Scalar sum = probabilities.sum();
    if (std::abs(static_cast<double>(sum) - 1.0) >= tol.distribution_sum) {
      throw std::invalid_argument("distribution sums to " +
                                  std::to_string(static_cast<double>(sum)) +
                                  ", expected 1");
    }
    probabilities_ = zero_pad(probabilities) / sum;
  }

  [[nodiscard]] const RVector<Scalar>& probabilities() const { return probabilities_; }
  [[nodiscard]] Index dim() const { return probabilities_.size(); }
  [[nodiscard]] int n_qubits() const { return qubit_count(dim()); }
  [[nodiscard]] Index original_length() const { return original_length_; }
  [[nodiscard]] bool padded() const { return original_length_ != dim(); }
  [[nodiscard]] Scalar operator[](Index i) const { return probabilities_[i]; }

 private:
  RVector<Scalar> probabilities_;
  Index original_length_;
};

}  // namespace qenc
