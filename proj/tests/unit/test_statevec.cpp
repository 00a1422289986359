#include "doctest.h"
#include "oracles.hpp"

#include "qenc/linalg.hpp"
#include "qenc/random.hpp"
#include "qenc/statevec.hpp"

#include <numbers>

using namespace qenc;
using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

namespace {

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("pauli_string single-site and two-site definitions") {
  Mat z = pauli_string(1, {{0, Pauli::Z}});
  Mat expect(2, 2);
  expect << 1, 0, 0, -1;
  CHECK(max_abs(z - expect) == 0.0);

  Mat zz = pauli_string(2, {{0, Pauli::Z}, {1, Pauli::Z}});
  Eigen::VectorXcd diag(4);
  diag << 1, -1, -1, 1;
  CHECK(max_abs(zz - Mat(diag.asDiagonal())) == 0.0);
}

TEST_CASE("pauli_string Y on qubit 0 of two: Hermitian, involutory, matches Kronecker") {
  const Mat y0 = pauli_string(2, {{0, Pauli::Y}});
  CHECK(max_abs(y0 * y0 - Mat::Identity(4, 4)) < 1e-15);
  CHECK(max_abs(y0 - y0.adjoint()) == 0.0);
  CHECK(max_abs(y0 - oracle::embed(2, 0, oracle::sigma_y())) == 0.0);
}

TEST_CASE("pauli_string agrees with Kronecker products for every string on 3 qubits") {
  const std::vector<oracle::Mat> singles{oracle::identity2(), oracle::sigma_x(), oracle::sigma_y(),
                                         oracle::sigma_z()};
  const Pauli kinds[] = {Pauli::X, Pauli::Y, Pauli::Z};
  for (int code = 1; code < 64; ++code) {
    std::vector<PauliFactor> factors;
    std::vector<oracle::Mat> ops;
    for (int q = 0; q < 3; ++q) {
      const int c = (code >> (2 * q)) & 3;
      ops.push_back(singles[static_cast<std::size_t>(c)]);
      if (c > 0) factors.push_back({q, kinds[c - 1]});
    }
    const Mat p = pauli_string(3, std::span<const PauliFactor>(factors));
    CHECK(max_abs(p - oracle::kron_all(ops)) == 0.0);
    CHECK(max_abs(p * p - Mat::Identity(8, 8)) < 1e-12);
    CHECK(max_abs(p - p.adjoint()) < 1e-12);
  }
}

TEST_CASE("pauli_string rejects bad sites") {
  CHECK_THROWS_AS(pauli_string(2, {{2, Pauli::X}}), std::invalid_argument);
  CHECK_THROWS_AS(pauli_string(2, {{-1, Pauli::X}}), std::invalid_argument);
  CHECK_THROWS_AS(pauli_string(2, {{1, Pauli::X}, {1, Pauli::Z}}), std::invalid_argument);
  CHECK_THROWS_AS(pauli_string(2, std::span<const PauliFactor>{}), std::invalid_argument);
}

TEST_CASE("StateVector validates its invariants") {
  Eigen::VectorXcd v(3);
  v << 1, 0, 0;
  CHECK_THROWS_AS(StateVector<>{v}, std::invalid_argument);
  Eigen::VectorXcd w(2);
  w << 1, 1;
  CHECK_THROWS_AS(StateVector<>{w}, std::invalid_argument);
  CHECK_NOTHROW(StateVector<>(w / std::sqrt(2.0)));
  CHECK(StateVector<>::basis(3, 5)[5] == cd(1));
  CHECK_THROWS_AS(StateVector<>::basis(2, 4), std::out_of_range);
}

TEST_CASE("apply_unitary examples") {
  Rng rng(11);
  const auto psi = random_state(3, rng);
  const auto same = apply_unitary(Mat(Mat::Identity(8, 8)), psi);
  CHECK((same.amplitudes() - psi.amplitudes()).norm() == 0.0);

  const auto plus = apply_unitary(oracle::hadamard(), StateVector<>::basis(1, 0));
  CHECK(std::abs(plus[0] - cd(1 / std::sqrt(2.0))) < 1e-15);
  CHECK(std::abs(plus[1] - cd(1 / std::sqrt(2.0))) < 1e-15);
}

TEST_CASE("apply_unitary preserves norm over 100 seeded Haar samples") {
  Rng rng(2024);
  for (int k = 0; k < 100; ++k) {
    const int n = 1 + k % 6;
    const Mat u = haar_unitary(Index(1) << n, rng);
    const auto psi = random_state(n, rng);
    const auto out = apply_unitary(u, psi);
    CHECK(std::abs(out.amplitudes().norm() - 1.0) < 1e-12);
    CHECK((out.amplitudes() - u * psi.amplitudes()).norm() == 0.0);
  }
}

TEST_CASE("apply_unitary errors") {
  const auto psi = StateVector<>::basis(2, 0);
  CHECK_THROWS_AS(apply_unitary(oracle::hadamard(), psi), std::invalid_argument);
  Mat not_unitary = Mat::Identity(4, 4);
  not_unitary(0, 0) = 1.001;
  CHECK_THROWS_AS(apply_unitary(not_unitary, psi), std::invalid_argument);
}

TEST_CASE("born_probabilities") {
  const double s = 1 / std::sqrt(2.0);
  Eigen::VectorXcd plus(2), minus(2);
  plus << s, s;
  minus << s, -s;
  const auto p = born_probabilities(StateVector<>(plus));
  const auto q = born_probabilities(StateVector<>(minus));
  CHECK(p[0] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(p[1] == doctest::Approx(0.5).epsilon(1e-15));
  // Sign is invisible to the Born rule.
  CHECK((p.probabilities() - q.probabilities()).norm() == 0.0);

  Rng rng(5);
  for (int k = 0; k < 100; ++k) {
    const auto d = born_probabilities(random_state(1 + k % 6, rng));
    CHECK(std::abs(d.probabilities().sum() - 1.0) < 1e-10);
  }
}

TEST_CASE("hermitian_spectral_decomposition") {
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 3;
  d(1, 1) = 1;
  auto dec = hermitian_spectral_decomposition(d);
  CHECK(dec.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(dec.eigenvalues[1] == doctest::Approx(3.0));

  dec = hermitian_spectral_decomposition(Mat(oracle::sigma_y()));
  CHECK(dec.eigenvalues[0] == doctest::Approx(-1.0));
  CHECK(dec.eigenvalues[1] == doctest::Approx(1.0));

  Rng rng(8);
  for (int k = 0; k < 10; ++k) {
    const Mat h = random_hermitian(8, rng);
    dec = hermitian_spectral_decomposition(h);
    CHECK((dec.reconstruct() - h).norm() < 1e-9 * std::max(1.0, h.norm()));
    CHECK((dec.eigenvectors.adjoint() * dec.eigenvectors - Mat::Identity(8, 8)).norm() < 1e-9);
    for (Index i = 1; i < 8; ++i) CHECK(dec.eigenvalues[i - 1] <= dec.eigenvalues[i]);
  }

  Mat skew = Mat::Zero(2, 2);
  skew(0, 1) = 1;
  CHECK_THROWS_AS(hermitian_spectral_decomposition(skew), std::invalid_argument);
}

TEST_CASE("evolve examples and oracle agreement") {
  CHECK(max_abs(evolve(Mat(oracle::sigma_z()), 0.0) - Mat::Identity(2, 2)) < 1e-15);

  const double t = std::numbers::pi / 2;
  const Mat u = evolve(Mat(oracle::sigma_z()), t);
  CHECK(std::abs(u(0, 0) - std::exp(cd(0, -t))) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::exp(cd(0, t))) < 1e-15);
  CHECK(std::abs(u(0, 1)) < 1e-15);

  Rng rng(3);
  for (int k = 0; k < 10; ++k) {
    const Mat h = random_hermitian(8, rng);
    const Mat v = evolve(h, 0.3);
    CHECK(unitarity_error(v) < 1e-10);
    CHECK(max_abs(v - oracle::expm_minus_i(h, 0.3)) < 1e-12);
  }
}

TEST_CASE("evolve group property over 20 seeded cases") {
  Rng rng(77);
  std::uniform_real_distribution<double> uni(-2, 2);
  for (int k = 0; k < 20; ++k) {
    const Mat h = random_hermitian(Index(1) << (1 + k % 4), rng);
    const double s = uni(rng), t = uni(rng);
    CHECK(max_abs(evolve(h, s) * evolve(h, t) - evolve(h, s + t)) < 1e-9);
  }
}

TEST_CASE("evolve_diagonal matches dense evolve on diagonal operators") {
  Eigen::VectorXd d(4);
  d << 0.5, -1.25, 2.0, 0.0;
  const Mat dense = evolve(Mat(d.cast<cd>().asDiagonal()), 0.7);
  const Eigen::VectorXcd fast = evolve_diagonal(d, 0.7);
  CHECK(max_abs(dense - Mat(fast.asDiagonal())) < 1e-14);
}

TEST_CASE("operator_distance") {
  Rng rng(1);
  const Mat a = haar_unitary(4, rng);
  CHECK(operator_distance(a, a) == 0.0);
  CHECK(operator_distance(Mat(Mat::Identity(2, 2)), Mat(-Mat::Identity(2, 2))) == doctest::Approx(2.0));

  for (int k = 0; k < 20; ++k) {
    const Index dim = Index(1) << (1 + k % 4);
    const Mat x = random_hermitian(dim, rng), y = haar_unitary(dim, rng);
    const double spec = operator_distance(x, y, OperatorNorm::spectral);
    const double frob = operator_distance(x, y, OperatorNorm::frobenius);
    CHECK(spec == doctest::Approx(oracle::spectral_norm(x - y)).epsilon(1e-10));
    CHECK(frob >= spec * (1 - 1e-12));
    CHECK(frob <= std::sqrt(double(dim)) * spec * (1 + 1e-12));
  }
  CHECK_THROWS_AS(operator_distance(a, Mat(Mat::Identity(2, 2))), std::invalid_argument);
}

TEST_CASE("haar_unitary is unitary and reproducible under a seed") {
  Rng a(99), b(99);
  const Mat u = haar_unitary(16, a);
  CHECK(unitarity_error(u) < 1e-12);
  CHECK(max_abs(u - haar_unitary(16, b)) == 0.0);
}

TEST_CASE("single-qubit gate kernel matches Kronecker embedding") {
  Rng rng(4);
  const auto psi = random_state(3, rng);
  for (int q = 0; q < 3; ++q) {
    Eigen::VectorXcd v = psi.amplitudes();
    apply_single_qubit_gate<double>(v, 3, q, ry_gate(0.37));
    const Mat g = oracle::expm_minus_i(0.5 * oracle::sigma_y(), 0.37);
    CHECK((v - oracle::embed(3, q, g) * psi.amplitudes()).norm() < 1e-15);
  }
}
