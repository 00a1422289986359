#pragma once

#include <Eigen/Dense>

#include <bit>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qenc {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using RVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

/// Dense operator on 2^n amplitudes. Unitarity and hermiticity are checked
/// at the call sites that require them rather than carried in the type.
template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Index = Eigen::Index;

/// Raised when a numerical routine cannot deliver its postcondition.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kMaxQubits = 14;

inline bool is_power_of_two(Index n) {
  return n > 0 && std::has_single_bit(static_cast<std::uint64_t>(n));
}

/// Smallest power of two >= max(n, 2); a register has at least one qubit.
inline Index padded_dimension(Index n) {
  if (n < 2) return 2;
  return static_cast<Index>(std::bit_ceil(static_cast<std::uint64_t>(n)));
}

inline int qubit_count(Index dim) {
  if (!is_power_of_two(dim) || dim < 2) {
    throw std::invalid_argument("dimension " + std::to_string(dim) +
                                " is not a power of two >= 2");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

/// Bit position of qubit `site` in a basis index. Qubit 0 is the most
/// significant bit.
inline int bit_position(int n_qubits, int site) { return n_qubits - 1 - site; }

}  // namespace qenc
