#include "doctest.h"
#include "oracles.hpp"

#include "qenc/interference.hpp"
#include "qenc/random.hpp"

#include <numbers>

using namespace qenc;
using Mat = Eigen::MatrixXcd;
using cd = std::complex<double>;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

const Distribution<> kHalf(vec({0.5, 0.5}));

}  // namespace

TEST_CASE("identity has no cross terms") {
  Rng rng(9);
  const auto p = random_distribution(8, rng);
  for (Index y = 0; y < 8; ++y) {
    const auto r = interference_decomposition(Mat(Mat::Identity(8, 8)), p, std::nullopt, y);
    CHECK(r.interference_term == 0.0);
    CHECK(r.classical_term == doctest::Approx(p[y]).epsilon(1e-15));
    CHECK(r.pairs.size() == 28);
  }
}

TEST_CASE("Hadamard on |+> and |->") {
  // H|+> = |0>: half of the probability comes from constructive interference.
  auto r = interference_decomposition(oracle::hadamard(), kHalf, std::nullopt, 0);
  CHECK(r.classical_term == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.interference_term == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.total == doctest::Approx(1.0).epsilon(1e-15));

  // H|-> = |1>: outcome 0 is cancelled.
  r = interference_decomposition(oracle::hadamard(), kHalf, vec({0, std::numbers::pi}), 0);
  CHECK(r.classical_term == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(r.interference_term == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(std::abs(r.total) < 1e-15);
}

TEST_CASE("decomposition identity and reality against a brute-force Born sum") {
  Rng rng(123);
  for (int k = 0; k < 30; ++k) {
    const Mat u = haar_unitary(8, rng);
    const auto p = random_distribution(8, rng);
    std::optional<Eigen::VectorXd> phi;
    if (k % 2) phi = random_phases(8, rng);
    for (Index y = 0; y < 8; ++y) {
      const auto r = interference_decomposition(u, p, phi, y);
      cd amp = 0;
      for (Index x = 0; x < 8; ++x) amp += u(y, x) * std::polar(std::sqrt(p[x]), phi ? (*phi)[x] : 0.0);
      CHECK(std::abs(r.total - std::norm(amp)) < 1e-14);
      CHECK(r.identity_residual() < 1e-10);
      CHECK(std::abs(r.interference_imag) < 1e-12);
      double pair_total = 0;
      for (const auto& t : r.pairs) pair_total += t.pair_sum();
      CHECK(std::abs(pair_total - r.interference_term) < 1e-14);
    }
  }
}

TEST_CASE("interference_decomposition_all agrees with the per-outcome form") {
  Rng rng(5);
  const Mat u = haar_unitary(4, rng);
  const auto p = random_distribution(4, rng);
  const auto all = interference_decomposition_all(u, p, std::nullopt);
  REQUIRE(all.size() == 4);
  for (Index y = 0; y < 4; ++y) {
    const auto one = interference_decomposition(u, p, std::nullopt, y);
    CHECK(all[static_cast<std::size_t>(y)].classical_term == one.classical_term);
    CHECK(all[static_cast<std::size_t>(y)].interference_term == one.interference_term);
    CHECK(std::abs(all[static_cast<std::size_t>(y)].total - one.total) < 1e-15);
  }
}

TEST_CASE("decomposition errors") {
  CHECK_THROWS_AS(interference_decomposition(oracle::hadamard(), Distribution<>(vec({0.25, 0.25, 0.25, 0.25})),
                                             std::nullopt, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(interference_decomposition(oracle::hadamard(), kHalf, std::nullopt, 2), std::out_of_range);
  Mat bad = oracle::hadamard();
  bad(0, 0) *= 1.1;
  CHECK_THROWS_AS(interference_decomposition(bad, kHalf, std::nullopt, 0), std::invalid_argument);
}

TEST_CASE("sign lock: argument independent of P, not of phi") {
  Rng rng(50);
  std::vector<Distribution<>> dists;
  for (int k = 0; k < 50; ++k) dists.push_back(random_distribution(2, rng));
  const auto locked = sign_lock_check(Mat(oracle::hadamard()), 0, 0, 1, dists);
  CHECK(locked.locked);
  CHECK(locked.spread < 1e-9);
  CHECK(locked.arguments.size() == 50);

  std::vector<Eigen::VectorXd> phases;
  for (int k = 0; k < 50; ++k) phases.push_back(random_phases(2, rng));
  const auto moving = sign_lock_check(Mat(oracle::hadamard()), 0, 0, 1, kHalf, phases);
  CHECK_FALSE(moving.locked);
  CHECK(moving.spread > 0.1);

  const std::vector<Distribution<>> same(5, kHalf);
  CHECK(sign_lock_check(Mat(oracle::hadamard()), 1, 0, 1, same).locked);
}

TEST_CASE("sign lock: undefined arguments are errors") {
  const std::vector<Distribution<>> degenerate{Distribution<>(vec({1.0, 0.0}))};
  CHECK_THROWS_AS(sign_lock_check(Mat(oracle::hadamard()), 0, 0, 1, degenerate), std::invalid_argument);
  const std::vector<Distribution<>> fine{kHalf};
  CHECK_THROWS_AS(sign_lock_check(Mat(Mat::Identity(2, 2)), 0, 0, 1, fine), std::invalid_argument);
  CHECK_THROWS_AS(sign_lock_check(Mat(oracle::hadamard()), 0, 1, 1, fine), std::invalid_argument);
}

TEST_CASE("diagonal trap") {
  const double theta = 1.234;
  Mat rz = Mat::Zero(2, 2);
  rz(0, 0) = std::exp(cd(0, -theta / 2));
  rz(1, 1) = std::exp(cd(0, theta / 2));
  CHECK(diagonal_trap_residual(Distribution<>(vec({0.3, 0.7})), rz) < 1e-12);

  Rng rng(8);
  const auto p = random_distribution(8, rng);
  CHECK(diagonal_trap_residual(p, Mat(Mat::Identity(8, 8))) < 1e-15);  // sqrt(p)^2 round-off only

  for (int k = 0; k < 100; ++k) {
    const auto q = random_distribution(8, rng);
    const Eigen::VectorXd phi = random_phases(8, rng);
    Mat d = Mat::Zero(8, 8);
    for (Index i = 0; i < 8; ++i) d(i, i) = std::polar(1.0, phi[i]);
    CHECK(diagonal_trap_residual(q, d) < 1e-12);
  }

  CHECK_THROWS_AS(diagonal_trap_residual(kHalf, Mat(oracle::hadamard())), std::invalid_argument);
  Mat scaled = Mat::Identity(2, 2) * 2.0;
  CHECK_THROWS_AS(diagonal_trap_residual(kHalf, scaled), std::invalid_argument);
}

TEST_CASE("commutator") {
  Rng rng(14);
  std::normal_distribution<double> normal;
  Mat a = Mat::Zero(8, 8), b = Mat::Zero(8, 8);
  for (Index i = 0; i < 8; ++i) {
    a(i, i) = normal(rng);
    b(i, i) = normal(rng);
  }
  CHECK(commutator(a, b).cwiseAbs().maxCoeff() < 1e-14);

  const Mat c = commutator(Mat(oracle::sigma_y()), Mat(oracle::sigma_z()));
  CHECK((c - cd(0, 2) * oracle::sigma_x()).cwiseAbs().maxCoeff() < 1e-15);

  const Mat h = random_hermitian(4, rng);
  CHECK(commutator(h, h).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(commutator(h, a), std::invalid_argument);
}

TEST_CASE("pairwise_term_signs") {
  // Permutation: one nonzero per row, so every cross term vanishes.
  Mat perm = Mat::Zero(4, 4);
  perm(0, 2) = perm(1, 0) = perm(2, 3) = perm(3, 1) = 1;
  Rng rng(21);
  const auto p = random_distribution(4, rng);
  for (Index y = 0; y < 4; ++y) {
    const auto rep = pairwise_term_signs(perm, p, y);
    CHECK_FALSE(rep.any_negative);
    for (const auto& s : rep.pairs) CHECK(s.real_part == 0.0);
  }

  const auto h = pairwise_term_signs(Mat(oracle::hadamard()), kHalf, 1);
  REQUIRE(h.pairs.size() == 1);
  CHECK(h.pairs[0].real_part == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(h.pairs[0].sign == -1);
  CHECK(h.any_negative);

  // Rescaling P never flips a pair's sign.
  const Mat hh = hadamard_transform(2);
  const auto reference = pairwise_term_signs(hh, random_distribution(4, rng), 1);
  for (int k = 0; k < 20; ++k) {
    const auto rep = pairwise_term_signs(hh, random_distribution(4, rng), 1);
    for (std::size_t i = 0; i < rep.pairs.size(); ++i) CHECK(rep.pairs[i].sign == reference.pairs[i].sign);
  }
}
