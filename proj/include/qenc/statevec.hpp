#pragma once

#include "qenc/distribution.hpp"
#include "qenc/linalg.hpp"
#include "qenc/tolerances.hpp"
#include "qenc/types.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qenc {

/// Pure state of n qubits: 2^n complex amplitudes of unit norm. Basis index
/// bits are ordered with qubit 0 as the most significant bit.
template <typename Scalar = double>
class StateVector {
 public:
  explicit StateVector(CVector<Scalar> amplitudes, const Tolerances& tol = kDefaultTolerances)
      : amplitudes_(std::move(amplitudes)) {
    n_qubits_ = qubit_count(amplitudes_.size());
    if (n_qubits_ > kMaxQubits) {
      throw std::invalid_argument("state has " + std::to_string(n_qubits_) +
                                  " qubits, more than supported");
    }
    const double norm = static_cast<double>(amplitudes_.norm());
    if (!(std::abs(norm - 1.0) < tol.norm)) {
      throw std::invalid_argument("state norm " + std::to_string(norm) + " is not 1");
    }
  }

  /// Computational basis state |index⟩.
  static StateVector basis(int n_qubits, Index index) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
      throw std::invalid_argument("qubit count out of range");
    }
    const Index dim = Index(1) << n_qubits;
    if (index < 0 || index >= dim) throw std::out_of_range("basis index out of range");
    CVector<Scalar> amps = CVector<Scalar>::Zero(dim);
    amps[index] = Scalar(1);
    return StateVector(std::move(amps));
  }

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] Index dim() const { return amplitudes_.size(); }
  [[nodiscard]] const CVector<Scalar>& amplitudes() const { return amplitudes_; }
  [[nodiscard]] Complex<Scalar> operator[](Index i) const { return amplitudes_[i]; }

 private:
  CVector<Scalar> amplitudes_;
  int n_qubits_ = 0;
};

enum class Pauli { X, Y, Z };

struct PauliFactor {
  int site;
  Pauli op;
};

/// Tensor product of single-site Paulis with identity on unassigned sites.
///
/// Built column by column from the action on basis states rather than by
/// Kronecker products: P|b⟩ = phase(b) |b xor flip_mask⟩.
template <typename Scalar = double>
CMatrix<Scalar> pauli_string(int n_qubits, std::span<const PauliFactor> factors) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count out of range");
  }
  if (factors.empty()) throw std::invalid_argument("Pauli string has no factors");

  std::vector<bool> seen(static_cast<std::size_t>(n_qubits), false);
  std::uint64_t flip_mask = 0;
  for (const auto& f : factors) {
    if (f.site < 0 || f.site >= n_qubits) {
      throw std::invalid_argument("Pauli site " + std::to_string(f.site) + " out of range");
    }
    if (seen[static_cast<std::size_t>(f.site)]) {
      throw std::invalid_argument("Pauli site " + std::to_string(f.site) + " assigned twice");
    }
    seen[static_cast<std::size_t>(f.site)] = true;
    if (f.op != Pauli::Z) flip_mask |= std::uint64_t{1} << bit_position(n_qubits, f.site);
  }

  const Index dim = Index(1) << n_qubits;
  CMatrix<Scalar> out = CMatrix<Scalar>::Zero(dim, dim);
  const Complex<Scalar> i_unit(0, 1);
  for (Index col = 0; col < dim; ++col) {
    Complex<Scalar> phase(1);
    for (const auto& f : factors) {
      const bool bit = (static_cast<std::uint64_t>(col) >> bit_position(n_qubits, f.site)) & 1U;
      switch (f.op) {
        case Pauli::X: break;
        case Pauli::Y: phase *= bit ? -i_unit : i_unit; break;  // Y|0⟩ = i|1⟩, Y|1⟩ = -i|0⟩
        case Pauli::Z: if (bit) phase = -phase; break;
      }
    }
    out(static_cast<Index>(static_cast<std::uint64_t>(col) ^ flip_mask), col) = phase;
  }
  return out;
}

template <typename Scalar = double>
CMatrix<Scalar> pauli_string(int n_qubits, std::initializer_list<PauliFactor> factors) {
  return pauli_string<Scalar>(n_qubits, std::span<const PauliFactor>(factors.begin(), factors.size()));
}

/// U|ψ⟩ for a unitary U. The product is not renormalized; a result off the
/// unit sphere is reported as an error.
template <typename Scalar>
StateVector<Scalar> apply_unitary(const CMatrix<Scalar>& u, const StateVector<Scalar>& psi,
                                  const Tolerances& tol = kDefaultTolerances) {
  require_square(u, "unitary");
  if (u.rows() != psi.dim()) {
    throw std::invalid_argument("unitary dimension " + std::to_string(u.rows()) +
                                " does not match state dimension " + std::to_string(psi.dim()));
  }
  require_unitary(u, tol);
  return StateVector<Scalar>(u * psi.amplitudes(), tol);
}

/// Born rule: p_i = |ψ_i|².
template <typename Scalar>
Distribution<Scalar> born_probabilities(const StateVector<Scalar>& psi,
                                        const Tolerances& tol = kDefaultTolerances) {
  // A norm off by δ puts the probability sum off by about 2δ.
  Tolerances widened = tol;
  widened.distribution_sum = std::max(tol.distribution_sum, 3 * tol.norm);
  return Distribution<Scalar>(psi.amplitudes().cwiseAbs2(), widened);
}

/// |⟨a|b⟩|².
template <typename Scalar>
Scalar fidelity(const StateVector<Scalar>& a, const StateVector<Scalar>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("state dimensions differ");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

/// In-place 2x2 gate on qubit `site` of a 2^n amplitude block; every column
/// of `amps` is treated as an independent state.
template <typename Scalar, typename Derived>
void apply_single_qubit_gate(Eigen::MatrixBase<Derived>& amps, int n_qubits, int site,
                             const Eigen::Matrix<Complex<Scalar>, 2, 2>& gate) {
  const Index stride = Index(1) << bit_position(n_qubits, site);
  const Index dim = amps.rows();
  for (Index base = 0; base < dim; base += 2 * stride) {
    for (Index off = 0; off < stride; ++off) {
      const Index i0 = base + off;
      const Index i1 = i0 + stride;
      for (Index c = 0; c < amps.cols(); ++c) {
        const Complex<Scalar> a0 = amps(i0, c);
        const Complex<Scalar> a1 = amps(i1, c);
        amps(i0, c) = gate(0, 0) * a0 + gate(0, 1) * a1;
        amps(i1, c) = gate(1, 0) * a0 + gate(1, 1) * a1;
      }
    }
  }
}

/// Standard single-qubit gates.
template <typename Scalar = double>
Eigen::Matrix<Complex<Scalar>, 2, 2> hadamard_gate() {
  const Scalar s = Scalar(1) / std::sqrt(Scalar(2));
  Eigen::Matrix<Complex<Scalar>, 2, 2> h;
  h << s, s, s, -s;
  return h;
}

/// e^{-iθσ_y/2}.
template <typename Scalar = double>
Eigen::Matrix<Complex<Scalar>, 2, 2> ry_gate(Scalar theta) {
  const Scalar c = std::cos(theta / 2);
  const Scalar s = std::sin(theta / 2);
  Eigen::Matrix<Complex<Scalar>, 2, 2> g;
  g << c, -s, s, c;
  return g;
}

/// H^{⊗n} as a dense operator.
template <typename Scalar = double>
CMatrix<Scalar> hadamard_transform(int n_qubits) {
  CMatrix<Scalar> out = CMatrix<Scalar>::Identity(Index(1) << n_qubits, Index(1) << n_qubits);
  for (int q = 0; q < n_qubits; ++q) apply_single_qubit_gate<Scalar>(out, n_qubits, q, hadamard_gate<Scalar>());
  return out;
}

}  // namespace qenc
