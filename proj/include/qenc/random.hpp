#pragma once

#include "qenc/distribution.hpp"
#include "qenc/statevec.hpp"
#include "qenc/types.hpp"

#include <Eigen/QR>

#include <cmath>
#include <numbers>
#include <random>

namespace qenc {

/// Seeded generator used by every randomized routine.
using Rng = std::mt19937_64;

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
/// of each diagonal entry of R moved into Q.
template <typename Scalar = double>
CMatrix<Scalar> haar_unitary(Index dim, Rng& rng) {
  std::normal_distribution<Scalar> normal(0, 1);
  CMatrix<Scalar> z(dim, dim);
  for (Index c = 0; c < dim; ++c)
    for (Index r = 0; r < dim; ++r) z(r, c) = Complex<Scalar>(normal(rng), normal(rng));

  Eigen::HouseholderQR<CMatrix<Scalar>> qr(z);
  CMatrix<Scalar> q = qr.householderQ();
  const CMatrix<Scalar>& r = qr.matrixQR();
  for (Index k = 0; k < dim; ++k) {
    const Scalar mag = std::abs(r(k, k));
    if (mag > Scalar(0)) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

/// Haar-random pure state on n qubits.
template <typename Scalar = double>
StateVector<Scalar> random_state(int n_qubits, Rng& rng) {
  std::normal_distribution<Scalar> normal(0, 1);
  CVector<Scalar> v(Index(1) << n_qubits);
  for (Index i = 0; i < v.size(); ++i) v[i] = Complex<Scalar>(normal(rng), normal(rng));
  v.normalize();
  return StateVector<Scalar>(std::move(v));
}

/// Flat Dirichlet sample (all concentrations 1) over `dim` outcomes.
template <typename Scalar = double>
Distribution<Scalar> random_distribution(Index dim, Rng& rng) {
  std::exponential_distribution<Scalar> expo(1);
  RVector<Scalar> w(dim);
  for (Index i = 0; i < dim; ++i) w[i] = expo(rng);
  return Distribution<Scalar>(w / w.sum());
}

/// Phases uniform in [-π, π).
template <typename Scalar = double>
RVector<Scalar> random_phases(Index dim, Rng& rng) {
  std::uniform_real_distribution<Scalar> uni(-std::numbers::pi_v<Scalar>, std::numbers::pi_v<Scalar>);
  RVector<Scalar> phi(dim);
  for (Index i = 0; i < dim; ++i) phi[i] = uni(rng);
  return phi;
}

/// Hermitian matrix with complex Gaussian entries.
template <typename Scalar = double>
CMatrix<Scalar> random_hermitian(Index dim, Rng& rng) {
  std::normal_distribution<Scalar> normal(0, 1);
  CMatrix<Scalar> a(dim, dim);
  for (Index c = 0; c < dim; ++c)
    for (Index r = 0; r < dim; ++r) a(r, c) = Complex<Scalar>(normal(rng), normal(rng));
  return (a + a.adjoint()) / Scalar(2);
}

/// Uniform reals in [lo, hi).
template <typename Scalar = double>
RVector<Scalar> random_uniform(Index size, Scalar lo, Scalar hi, Rng& rng) {
  std::uniform_real_distribution<Scalar> uni(lo, hi);
  RVector<Scalar> v(size);
  for (Index i = 0; i < size; ++i) v[i] = uni(rng);
  return v;
}

}  // namespace qenc
