#include "doctest.h"
#include "oracles.hpp"

#include "qenc/encoders.hpp"
#include "qenc/random.hpp"
#include "qenc/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numbers>

using namespace qenc;
using Mat = Eigen::MatrixXcd;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

HamiltonianSpec<> make_spec(Eigen::VectorXd x, Eigen::MatrixXd j, double mu = 1.0) {
  HamiltonianSpec<> s;
  s.x = std::move(x);
  s.couplings = std::move(j);
  s.mu = mu;
  return s;
}

/// Sorted real parts from the general (non-Hermitian) eigensolver.
std::vector<double> general_eigenvalues(const Mat& h) {
  Eigen::ComplexEigenSolver<Mat> es(h);
  std::vector<double> out;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()[i].real());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("spectral_profile of a single qubit") {
  Rng rng(1);
  std::uniform_real_distribution<double> uni(-3, 3);
  for (int k = 0; k < 10; ++k) {
    const double a = uni(rng);
    const auto prof = spectral_profile(make_spec(vec({a}), Eigen::MatrixXd::Zero(1, 1)));
    CHECK(prof.eigenvalues[0] == doctest::Approx(-std::abs(a)).epsilon(1e-14));
    CHECK(prof.eigenvalues[1] == doctest::Approx(std::abs(a)).epsilon(1e-14));
    CHECK(std::abs(prof.mass_gap - 2 * std::abs(a)) < 1e-12);
  }
}

TEST_CASE("spectral_profile of the empty Hamiltonian is degenerate") {
  const auto prof = spectral_profile(make_spec(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3)));
  CHECK(prof.eigenvalues.cwiseAbs().maxCoeff() == 0.0);
  CHECK(prof.mass_gap == 0.0);
  CHECK(prof.degenerate_ground);
}

TEST_CASE("spectral_profile matches a general eigensolver on the Kronecker-built operator") {
  const auto spec = make_spec(vec({1, 1}), ring_couplings(2));
  const auto prof = spectral_profile(spec);
  const auto expect = general_eigenvalues(oracle::h_data(spec.x) + oracle::h_topo(spec.couplings, 1.0));
  for (Index i = 0; i < 4; ++i) CHECK(prof.eigenvalues[i] == doctest::Approx(expect[static_cast<std::size_t>(i)]).epsilon(1e-12));
  CHECK(prof.mass_gap == doctest::Approx(expect[1] - expect[0]).epsilon(1e-12));
}

TEST_CASE("spectrum is invariant under qubit relabeling") {
  Rng rng(2);
  for (int k = 0; k < 5; ++k) {
    const auto spec = make_spec(random_uniform<double>(3, -kPi, kPi, rng), complete_couplings(3), 0.7);
    const Mat h = build_h_eff(spec);
    std::vector<int> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    const Mat p = oracle::qubit_permutation(3, perm);
    const auto a = spectral_profile(h);
    const auto b = spectral_profile(Mat(p * h * p.adjoint()));
    CHECK((a.eigenvalues - b.eigenvalues).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(a.mass_gap >= 0.0);
  }
}

TEST_CASE("zeeman_sweep basics") {
  Rng rng(3);
  const auto spec = make_spec(random_uniform<double>(2, -1, 1, rng), ring_couplings(2));
  CHECK(zeeman_sweep(spec, std::vector<double>{0.0}).stability_score == 0.0);
  CHECK_THROWS_AS(zeeman_sweep(spec, std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(zeeman_sweep(spec, std::vector<double>{0.1, 0.2}), std::invalid_argument);

  // Σσ_z alone has levels n - 2k; the two lowest differ by 2|ε|.
  const auto empty = make_spec(Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Zero(3, 3));
  const auto trace = zeeman_sweep(empty, std::vector<double>{-0.3, 0.0, 0.05, 0.2});
  CHECK(trace.gaps[0] == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(trace.gaps[1] == 0.0);
  CHECK(trace.gaps[2] == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(trace.gaps[3] == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(trace.stability_score == doctest::Approx(0.6).epsilon(1e-14));
}

TEST_CASE("zeeman_sweep trace is continuous under grid refinement") {
  Rng rng(4);
  const auto spec = make_spec(random_uniform<double>(3, -kPi, kPi, rng), ring_couplings(3));
  std::vector<double> coarse, fine;
  for (int k = -5; k <= 5; ++k) coarse.push_back(0.02 * k);
  for (int k = -10; k <= 10; ++k) fine.push_back(0.01 * k);
  const auto a = zeeman_sweep(spec, coarse);
  const auto b = zeeman_sweep(spec, fine);
  // Weyl: each level moves at most ‖Σσ_z‖ = n per unit ε, so the gap at most 2n.
  const double slope_bound = 2.0 * 3;
  for (std::size_t k = 1; k < a.gaps.size(); ++k) CHECK(std::abs(a.gaps[k] - a.gaps[k - 1]) <= slope_bound * 0.02 + 1e-12);
  for (std::size_t k = 0; k < a.gaps.size(); ++k) CHECK(std::abs(a.gaps[k] - b.gaps[2 * k]) < 1e-12);
  for (std::size_t k = 1; k < b.gaps.size(); ++k) CHECK(std::abs(b.gaps[k] - b.gaps[k - 1]) <= slope_bound * 0.01 + 1e-12);
}

TEST_CASE("zeeman gap is even in epsilon without couplings") {
  Rng rng(5);
  for (int k = 0; k < 5; ++k) {
    const auto spec = make_spec(random_uniform<double>(3, -2, 2, rng), Eigen::MatrixXd::Zero(3, 3));
    const auto trace = zeeman_sweep(spec, std::vector<double>{-0.37, -0.1, 0.0, 0.1, 0.37});
    CHECK(std::abs(trace.gaps[0] - trace.gaps[4]) < 1e-10);
    CHECK(std::abs(trace.gaps[1] - trace.gaps[3]) < 1e-10);
  }
}

TEST_CASE("resonance_similarity") {
  Rng rng(6);
  const auto a = make_spec(random_uniform<double>(2, -1, 1, rng), ring_couplings(2));
  auto v = resonance_similarity(a, a, 1e-3);
  CHECK(v.resonant);
  CHECK(v.delta == 0.0);
  CHECK(*v.spectrum_distance == 0.0);

  v = resonance_similarity(make_spec(vec({1}), Eigen::MatrixXd::Zero(1, 1)),
                           make_spec(vec({-1}), Eigen::MatrixXd::Zero(1, 1)), 1e-12);
  CHECK(v.gap_a == doctest::Approx(2.0));
  CHECK(v.gap_b == doctest::Approx(2.0));
  CHECK(v.resonant);

  // Gaps from the general eigensolver on Kronecker-built operators.
  const auto p = make_spec(vec({0.4, -0.9}), ring_couplings(2), 1.0);
  const auto q = make_spec(vec({0.4, -0.9}), ring_couplings(2), 1.5);
  const auto ep = general_eigenvalues(oracle::h_data(p.x) + oracle::h_topo(p.couplings, 1.0));
  const auto eq = general_eigenvalues(oracle::h_data(q.x) + oracle::h_topo(q.couplings, 1.5));
  const double oracle_delta = std::abs((ep[1] - ep[0]) - (eq[1] - eq[0]));
  REQUIRE(oracle_delta > 1e-6);
  v = resonance_similarity(p, q, 1e-6);
  CHECK_FALSE(v.resonant);
  CHECK(v.delta == doctest::Approx(oracle_delta).epsilon(1e-10));

  CHECK_THROWS_AS(resonance_similarity(p, q, 0.0), std::invalid_argument);
}

TEST_CASE("resonance is reflexive and symmetric but not transitive") {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    const auto a = make_spec(random_uniform<double>(2, -1, 1, rng), ring_couplings(2));
    const auto b = make_spec(random_uniform<double>(2, -1, 1, rng), ring_couplings(2));
    const auto ab = resonance_similarity(a, b, 0.2);
    const auto ba = resonance_similarity(b, a, 0.2);
    CHECK(ab.resonant == ba.resonant);
    CHECK(ab.delta == ba.delta);
    CHECK(resonance_similarity(a, a, 1e-12).resonant);
  }

  // Gaps g, g + 0.9 tol, g + 1.8 tol from single-qubit specs (gap = 2|x|).
  const double tol = 1e-3, g = 1.0;
  const auto s0 = make_spec(vec({g / 2}), Eigen::MatrixXd::Zero(1, 1));
  const auto s1 = make_spec(vec({(g + 0.9 * tol) / 2}), Eigen::MatrixXd::Zero(1, 1));
  const auto s2 = make_spec(vec({(g + 1.8 * tol) / 2}), Eigen::MatrixXd::Zero(1, 1));
  CHECK(resonance_similarity(s0, s1, tol).resonant);
  CHECK(resonance_similarity(s1, s2, tol).resonant);
  CHECK_FALSE(resonance_similarity(s0, s2, tol).resonant);
}

TEST_CASE("overlap_similarity") {
  Rng rng(8);
  const auto psi = random_state(3, rng);
  CHECK(overlap_similarity(psi, psi) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(overlap_similarity(StateVector<>::basis(1, 0), StateVector<>::basis(1, 1)) == 0.0);

  const Eigen::VectorXd x = random_uniform<double>(4, -1, 1, rng);
  const Eigen::VectorXd flipped = x.cwiseProduct(vec({1, -1, -1, 1}));
  const auto a = probability_loading(DataVector<>(x).induced_distribution());
  const auto b = probability_loading(DataVector<>(flipped).induced_distribution());
  CHECK(std::abs(overlap_similarity(a, b) - 1.0) < 1e-12);
  CHECK_THROWS_AS(overlap_similarity(a, psi), std::invalid_argument);
}
