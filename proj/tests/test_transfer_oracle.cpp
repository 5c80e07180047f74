#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinfp/transfer_oracle.hpp"
#include "spinfp/waveguide_solver.hpp"

using namespace spinfp;
using std::numbers::pi;

TEST(TransferOracle, ReferenceTransmittivity) {
  const oracle::ImpurityChain chain = oracle::two_impurity_chain(DimensionlessParams(1.0, pi / 2));
  const auto r = oracle::oracle_transmittivity(chain, SpinVector::product(Spin::Up, Spin::Up, Spin::Down));
  EXPECT_NEAR(r.transmittivity, 0.5410941189648523, 1e-12);
}

TEST(TransferOracle, MatchesSolverInCoupledBasis) {
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 20.0), th(0.01, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    const DimensionlessParams p(u(gen), th(gen));
    const auto o = oracle::oracle_scattering(oracle::two_impurity_chain(p));
    const auto s = waveguide::scattering_matrices(p);
    EXPECT_LT((operator_to_coupled(o.t_left) - s.transmission).cwiseAbs().maxCoeff(), 1e-10);
    EXPECT_LT((operator_to_coupled(o.r_left) - s.reflection).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(TransferOracle, SMatrixIsUnitary) {
  const auto o = oracle::oracle_scattering(oracle::two_impurity_chain(DimensionlessParams(3.3, 0.8)));
  const oracle::Mat16 s = o.s_matrix();
  EXPECT_LT((s.adjoint() * s - oracle::Mat16::Identity()).norm(), 1e-11);
}

TEST(TransferOracle, EmptyChainIsTransparent) {
  oracle::ImpurityChain chain;
  chain.k = 1.2;
  const auto o = oracle::oracle_scattering(chain);
  EXPECT_LT((o.t_left - Mat8::Identity()).norm(), 1e-15);
  EXPECT_LT(o.r_left.norm(), 1e-15);
}

TEST(TransferOracle, SingleSiteMatchesDeltaScatterer) {
  // one site with coupling g and k = 1: a channel with sigma.S1 = s sees the jump lambda = 2 g s,
  // so t = 1 / (1 - lambda / 2i)
  const double g = 0.9;
  oracle::ImpurityChain chain{{{0.0, g, 1}}, 1.0};
  const auto o = oracle::oracle_scattering(chain);
  const Vec8 triplet = SpinVector::product(Spin::Up, Spin::Up, Spin::Down).amplitudes();  // sigma.S1 = 1/4
  const cplx t = (triplet.adjoint() * o.t_left * triplet)(0, 0);
  EXPECT_NEAR(std::abs(t - 1.0 / (1.0 - 2.0 * g * 0.25 / cplx(0.0, 2.0))), 0.0, 1e-14);
}

TEST(TransferOracle, LeftAndRightIncidenceAreConsistent) {
  const auto o = oracle::oracle_scattering(oracle::two_impurity_chain(DimensionlessParams(1.1, 2.5)));
  // reciprocity under spatial reflection swaps the impurity labels; the flux bound holds either way
  for (int c = 0; c < 8; ++c) {
    const double flux = o.t_right.col(c).squaredNorm() + o.r_right.col(c).squaredNorm();
    EXPECT_NEAR(flux, 1.0, 1e-12);
  }
}

TEST(TransferOracle, CommutatorNorms) {
  const auto o = oracle::oracle_scattering(oracle::two_impurity_chain(DimensionlessParams(10.0, 2.0)));
  const SpinOperatorSet& ops = spin_operators();
  EXPECT_LT(oracle::commutator_norm(o, ops.total_spin_sq), 1e-11);
  EXPECT_LT(oracle::commutator_norm(o, ops.total_sz), 1e-11);
  EXPECT_GT(oracle::commutator_norm(o, ops.s12_sq), 1e-3);
}

TEST(TransferOracle, ValidationErrors) {
  EXPECT_THROW((oracle::ImpurityChain{{{0.0, 1.0, 1}}, 0.0}.validate()), std::domain_error);
  EXPECT_THROW((oracle::ImpurityChain{{{0.0, -1.0, 1}}, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((oracle::ImpurityChain{{{0.0, 1.0, 3}}, 1.0}.validate()), std::domain_error);
  EXPECT_THROW((oracle::ImpurityChain{{{1.0, 1.0, 1}, {1.0, 1.0, 2}}, 1.0}.validate()), std::domain_error);
  const auto chain = oracle::two_impurity_chain(DimensionlessParams(1.0, 1.0));
  Vec8 v = Vec8::Zero();
  v[0] = 2.0;
  EXPECT_THROW(oracle::oracle_transmittivity(chain, SpinVector(v)), std::domain_error);
}
