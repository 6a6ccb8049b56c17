#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qk/krylov.hpp"
#include "qk/model.hpp"

#include "oracles.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace {

qk::MomentVector reference_moments(int n_sites, double mu, double x,
                                   int k_max, double scale) {
  const Eigen::MatrixXd h = oracle::dense_gauged_hamiltonian(n_sites, mu, x);
  const Eigen::VectorXd psi0 = qk::neel_state(n_sites);
  qk::MomentVector out;
  out.scale = scale;
  out.mu = oracle::dense_moments(h, psi0, k_max, scale);
  return out;
}

}  // namespace

TEST_CASE("moments match a dense full-space recursion") {
  const qk::ModelParams p{4, 1.5, 0.5};
  const qk::GaugedOperator op(p);
  const Eigen::VectorXd psi0 = qk::neel_state(p.n_sites);
  const int k_max = 16;
  const double scale = p.n_sites;

  const qk::MomentVector got = qk::compute_moments(op, psi0, k_max, scale);
  const qk::MomentVector want =
      reference_moments(p.n_sites, p.mu, p.x, k_max, scale);

  REQUIRE(got.k_max() == k_max);
  CHECK(got.mu[0] == 1.0);
  for (int k = 0; k <= k_max; ++k)
    CHECK(got.mu[k] ==
          doctest::Approx(want.mu[k]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("dense-matrix variant agrees on the zero-charge sector") {
  const qk::ModelParams p{6, 1.5, 0.5};
  const Eigen::MatrixXd sector = qk::sector_dense_matrix(p);
  const std::vector<std::uint64_t> basis =
      qk::balanced_sector_basis(p.n_sites);
  const std::uint64_t neel = qk::neel_config(p.n_sites);

  Eigen::VectorXd psi0 = Eigen::VectorXd::Zero(Eigen::Index(basis.size()));
  bool found = false;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == neel) {
      psi0[Eigen::Index(i)] = 1.0;
      found = true;
    }
  REQUIRE(found);

  const int k_max = 12;
  const double scale = p.n_sites;
  const qk::MomentVector in_sector =
      qk::compute_moments(sector, psi0, k_max, scale);
  const qk::MomentVector full = qk::compute_moments(
      qk::GaugedOperator(p), qk::neel_state(p.n_sites), k_max, scale);

  for (int k = 0; k <= k_max; ++k)
    CHECK(in_sector.mu[k] ==
          doctest::Approx(full.mu[k]).epsilon(1e-12).scale(1.0));
}

TEST_CASE("rescaling divides moment k by scale^k") {
  const qk::ModelParams p{2, 1.5, 0.5};
  const qk::GaugedOperator op(p);
  const Eigen::VectorXd psi0 = qk::neel_state(p.n_sites);
  const qk::MomentVector unit = qk::compute_moments(op, psi0, 8, 1.0);
  const qk::MomentVector two = qk::compute_moments(op, psi0, 8, 2.0);
  for (int k = 0; k <= 8; ++k)
    CHECK(two.mu[k] ==
          doctest::Approx(unit.mu[k] / std::pow(2.0, k)).epsilon(1e-12));
}

TEST_CASE("moment recursion rejects bad inputs") {
  const qk::ModelParams p{2, 1.5, 0.5};
  const qk::GaugedOperator op(p);
  Eigen::VectorXd psi0 = qk::neel_state(p.n_sites);
  CHECK_THROWS(qk::compute_moments(op, psi0, 4, 0.0));     // bad scale
  CHECK_THROWS(qk::compute_moments(op, 2.0 * psi0, 4, 1.0));  // not unit
  Eigen::VectorXd wrong = Eigen::VectorXd::Unit(3, 0);
  CHECK_THROWS(qk::compute_moments(op, wrong, 4, 1.0));    // dimension
}

TEST_CASE("hankel pair lays moments along antidiagonals") {
  const qk::MomentVector m = reference_moments(4, 1.5, 0.5, 8, 4.0);
  const qk::HankelPair pair = qk::assemble_hankel(m, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(pair.s(i, j) == m.mu[i + j]);
      CHECK(pair.h(i, j) == m.mu[i + j + 1]);
    }
  CHECK(pair.s.isApprox(pair.s.transpose()));
  CHECK(pair.h.isApprox(pair.h.transpose()));
}

TEST_CASE("hankel assembly rejects short moment vectors") {
  const qk::MomentVector m = reference_moments(4, 1.5, 0.5, 4, 4.0);
  CHECK_THROWS(qk::assemble_hankel(m, 3));  // needs k_max >= 5
  CHECK_NOTHROW(qk::assemble_hankel(m, 2));
  CHECK_THROWS(qk::assemble_hankel(m, 0));
}

TEST_CASE("perturbation hankel shares one delta per antidiagonal") {
  Eigen::VectorXd delta(3);
  delta << 0.1, 0.2, 0.3;

  const Eigen::MatrixXd s = qk::perturbation_hankel(delta, 2, 0);
  CHECK(s(0, 0) == 0.0);  // delta_0 is identically zero
  CHECK(s(0, 1) == 0.1);
  CHECK(s(1, 0) == 0.1);
  CHECK(s(1, 1) == 0.2);

  const Eigen::MatrixXd h = qk::perturbation_hankel(delta, 2, 1);
  CHECK(h(0, 0) == 0.1);
  CHECK(h(0, 1) == 0.2);
  CHECK(h(1, 0) == 0.2);
  CHECK(h(1, 1) == 0.3);

  CHECK_THROWS(qk::perturbation_hankel(delta, 3, 1));  // needs 5 entries
  CHECK_THROWS(qk::perturbation_hankel(delta, 2, 2));  // offset is 0 or 1
}

TEST_CASE("single-shot variances equal mu_2k - mu_k^2 and stay nonnegative") {
  const qk::MomentVector m = reference_moments(4, 1.5, 0.5, 12, 4.0);
  const Eigen::VectorXd var = qk::single_shot_variances(m, 6);
  REQUIRE(var.size() == 6);
  for (int k = 1; k <= 6; ++k) {
    const double direct = m.mu[2 * k] - m.mu[k] * m.mu[k];
    CHECK(var[k - 1] == doctest::Approx(direct).epsilon(1e-12).scale(1.0));
    CHECK(var[k - 1] >= 0.0);
  }
  CHECK_THROWS(qk::single_shot_variances(m, 7));  // needs k_max >= 14
}

TEST_CASE("an eigenstate has vanishing measurement variance at every order") {
  const qk::ModelParams p{4, 1.5, 0.5};
  const Eigen::MatrixXd sector = qk::sector_dense_matrix(p);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sector);
  const Eigen::VectorXd ground = es.eigenvectors().col(0);

  const qk::MomentVector m = qk::compute_moments(sector, ground, 12, 4.0);
  const Eigen::VectorXd var = qk::single_shot_variances(m, 6);
  for (int k = 0; k < 6; ++k) CHECK(var[k] <= 1e-12);
}
