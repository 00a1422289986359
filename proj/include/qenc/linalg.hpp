#pragma once

#include "qenc/tolerances.hpp"
#include "qenc/types.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace qenc {

template <typename Scalar>
void require_square(const CMatrix<Scalar>& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw std::invalid_argument(std::string(what) + " must be a nonempty square matrix");
  }
}

template <typename Scalar>
void require_same_shape(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("operator dimensions differ: " + std::to_string(a.rows()) +
                                " vs " + std::to_string(b.rows()));
  }
}

/// max |H - H†| over entries.
template <typename Scalar>
Scalar hermiticity_error(const CMatrix<Scalar>& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

/// max |U†U - I| over entries.
template <typename Scalar>
Scalar unitarity_error(const CMatrix<Scalar>& u) {
  const CMatrix<Scalar> gram = u.adjoint() * u;
  return (gram - CMatrix<Scalar>::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

template <typename Scalar>
void require_hermitian(const CMatrix<Scalar>& h, const Tolerances& tol = kDefaultTolerances) {
  require_square(h, "Hermitian operator");
  if (static_cast<double>(hermiticity_error(h)) >= tol.hermiticity) {
    throw std::invalid_argument("operator is not Hermitian within tolerance");
  }
}

template <typename Scalar>
void require_unitary(const CMatrix<Scalar>& u, const Tolerances& tol = kDefaultTolerances) {
  require_square(u, "unitary");
  if (static_cast<double>(unitarity_error(u)) >= tol.unitarity) {
    throw std::invalid_argument("operator is not unitary within tolerance");
  }
}

template <typename Scalar>
bool is_diagonal(const CMatrix<Scalar>& m) {
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (r != c && m(r, c) != Complex<Scalar>(0)) return false;
  return true;
}

/// H = V diag(eigenvalues) V†, eigenvalues ascending.
template <typename Scalar>
struct SpectralDecomposition {
  RVector<Scalar> eigenvalues;
  CMatrix<Scalar> eigenvectors;

  [[nodiscard]] CMatrix<Scalar> reconstruct() const {
    return eigenvectors * eigenvalues.template cast<Complex<Scalar>>().asDiagonal() *
           eigenvectors.adjoint();
  }
};

/// Full eigendecomposition of a Hermitian operator. Throws NumericalError if
/// the solver fails or the result misses its reconstruction bounds.
template <typename Scalar>
SpectralDecomposition<Scalar> hermitian_spectral_decomposition(
    const CMatrix<Scalar>& h, const Tolerances& tol = kDefaultTolerances) {
  require_hermitian(h, tol);
  // Symmetrize so the solver only ever sees the exact Hermitian part.
  const CMatrix<Scalar> sym = (h + h.adjoint()) / Scalar(2);
  Eigen::SelfAdjointEigenSolver<CMatrix<Scalar>> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  SpectralDecomposition<Scalar> out{solver.eigenvalues(), solver.eigenvectors()};

  const auto n = h.rows();
  const double scale = std::max(1.0, static_cast<double>(h.norm()));
  const double residual = static_cast<double>((out.reconstruct() - h).norm());
  const double orthogonality = static_cast<double>(
      (out.eigenvectors.adjoint() * out.eigenvectors - CMatrix<Scalar>::Identity(n, n)).norm());
  if (residual >= tol.decomposition * scale || orthogonality >= tol.decomposition) {
    throw NumericalError("eigendecomposition failed its residual check (reconstruction " +
                         std::to_string(residual) + ", orthogonality " +
                         std::to_string(orthogonality) + ")");
  }
  return out;
}

/// e^{-itH} from an existing decomposition.
template <typename Scalar>
CMatrix<Scalar> evolve(const SpectralDecomposition<Scalar>& dec, std::type_identity_t<Scalar> t) {
  const Complex<Scalar> minus_i(0, -1);
  const CVector<Scalar> phases = (minus_i * t * dec.eigenvalues.template cast<Complex<Scalar>>())
                                     .array()
                                     .exp()
                                     .matrix();
  return dec.eigenvectors * phases.asDiagonal() * dec.eigenvectors.adjoint();
}

/// e^{-itH} = V e^{-itΛ} V†.
template <typename Scalar>
CMatrix<Scalar> evolve(const CMatrix<Scalar>& h, std::type_identity_t<Scalar> t,
                       const Tolerances& tol = kDefaultTolerances) {
  return evolve(hermitian_spectral_decomposition(h, tol), t);
}

/// e^{-it diag(d)} for an operator already diagonal in the computational basis.
template <typename Scalar>
CVector<Scalar> evolve_diagonal(const RVector<Scalar>& diagonal, std::type_identity_t<Scalar> t) {
  const Complex<Scalar> minus_i(0, -1);
  return (minus_i * t * diagonal.template cast<Complex<Scalar>>()).array().exp().matrix();
}

/// Largest singular value.
template <typename Scalar>
Scalar spectral_norm(const CMatrix<Scalar>& m) {
  if (m.size() == 0) return Scalar(0);
  Eigen::BDCSVD<CMatrix<Scalar>> svd(m);
  return svd.singularValues()(0);
}

enum class OperatorNorm { spectral, frobenius };

/// ‖A - B‖ in the requested norm.
template <typename Scalar>
Scalar operator_distance(const CMatrix<Scalar>& a, const CMatrix<Scalar>& b,
                         OperatorNorm norm = OperatorNorm::spectral) {
  require_same_shape(a, b);
  const CMatrix<Scalar> diff = a - b;
  return norm == OperatorNorm::frobenius ? diff.norm() : spectral_norm(diff);
}

}  // namespace qenc
