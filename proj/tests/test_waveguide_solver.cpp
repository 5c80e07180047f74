#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "spinfp/closed_form.hpp"
#include "spinfp/waveguide_solver.hpp"

using namespace spinfp;
using std::numbers::pi;

TEST(WaveguideSolver, DoubletReferenceSolution) {
  const SectorSolution s = waveguide::solve_doublet(DimensionlessParams(2.0, 1.0), 1);
  ASSERT_EQ(s.channels.size(), 2u);
  EXPECT_NEAR(std::abs(s.channels[0].t - cplx(0.11381867081651172, 0.06298750715615722)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(s.channels[1].t - cplx(0.11327273267126693, 0.03895778287215598)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(s.channels[0].b_left - cplx(0.08013577377776704, -0.4517428034897507)), 0.0, 1e-13);
  EXPECT_NEAR(std::abs(s.channels[1].b_left - cplx(-0.8491627229568799, 0.19276625871609784)), 0.0, 1e-13);
  EXPECT_LT(s.residual, 1e-14);
}

TEST(WaveguideSolver, IncidentAmplitudeIsUnit) {
  const SectorSolution s = waveguide::solve_doublet(DimensionlessParams(1.0, 0.5), 0);
  EXPECT_EQ(s.channels[0].a_left, cplx(1.0, 0.0));
  EXPECT_EQ(s.channels[1].a_left, cplx(0.0, 0.0));
}

TEST(WaveguideSolver, FluxIsConservedPerSector) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 20.0), th(0.01, 2 * pi);
  for (int i = 0; i < 100; ++i) {
    const DimensionlessParams p(u(gen), th(gen));
    EXPECT_NEAR(waveguide::solve_quartet(p).outgoing_flux(), 1.0, 1e-12);
    EXPECT_NEAR(waveguide::solve_doublet(p, 0).outgoing_flux(), 1.0, 1e-12);
    EXPECT_NEAR(waveguide::solve_doublet(p, 1).outgoing_flux(), 1.0, 1e-12);
  }
}

TEST(WaveguideSolver, ContinuityAtBothSites) {
  const SectorSolution s = waveguide::solve_doublet(DimensionlessParams(1.7, 2.2), 1);
  const double k = 2.2;
  const cplx e = std::exp(cplx(0.0, k));
  for (const RegionCoefficients& c : s.channels) {
    EXPECT_NEAR(std::abs(c.a_left + c.b_left - c.a_mid - c.b_mid), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(c.a_mid * e + c.b_mid / e - c.t * e), 0.0, 1e-13);
  }
}

TEST(WaveguideSolver, AgreesWithClosedForm) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> u(0.0, 20.0), th(0.01, 2 * pi);
  for (int i = 0; i < 200; ++i) {
    const DimensionlessParams p(u(gen), th(gen));
    const ChannelAmplitudes a = waveguide::channel_amplitudes(p);
    EXPECT_NEAR(std::abs(a.t_quartet - closed_form::t_quartet(p)), 0.0, 1e-11);
    EXPECT_LT((a.t_doublet - closed_form::t_doublet(p)).cwiseAbs().maxCoeff(), 1e-11);
  }
}

TEST(WaveguideSolver, PerturbedChannelCouplingIsDetected) {
  // a 1% error in the off-diagonal S_e1^2 element shows up far above tolerance
  Eigen::Matrix2d se1;
  se1 << 1.5, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, 0.5;
  Eigen::Matrix2d bad = se1;
  bad(0, 1) *= 1.01;
  bad(1, 0) *= 1.01;
  const DimensionlessParams p(2.0, 1.3);
  const Mat2 exact = closed_form::t_doublet(p);
  const SectorSolution good = waveguide::solve_doublet(p, 0, se1);
  const SectorSolution off = waveguide::solve_doublet(p, 0, bad);
  EXPECT_LT(std::abs(good.channels[1].t - exact(1, 0)), 1e-12);
  EXPECT_GT(std::abs(off.channels[1].t - exact(1, 0)), 1e-4);
}

TEST(WaveguideSolver, PotentialsHaveExpectedSpectra) {
  const waveguide::SitePotentials q = waveguide::quartet_potentials();
  EXPECT_NEAR(q.first(0, 0), 0.25, 1e-15);
  EXPECT_NEAR(q.second(0, 0), 0.25, 1e-15);
  Eigen::Matrix2d se1;
  se1 << 1.5, std::sqrt(3.0) / 2.0, std::sqrt(3.0) / 2.0, 0.5;
  const waveguide::SitePotentials d = waveguide::doublet_potentials(se1);
  EXPECT_NEAR(d.second(0, 0), -0.75, 1e-15);
  EXPECT_NEAR(d.second(1, 1), 0.25, 1e-15);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(d.first);
  EXPECT_NEAR(eig.eigenvalues()[0], -0.75, 1e-14);
  EXPECT_NEAR(eig.eigenvalues()[1], 0.25, 1e-14);
}

TEST(WaveguideSolver, AssembledMatricesAreBlockDiagonal) {
  const waveguide::ScatteringMatrices s = waveguide::scattering_matrices(DimensionlessParams(1.0, 0.9));
  const cplx tq = s.transmission(0, 0);
  for (int i = 1; i < 4; ++i) EXPECT_EQ(s.transmission(i, i), tq);
  EXPECT_EQ(s.transmission(0, 4), cplx(0.0, 0.0));
  EXPECT_EQ(s.transmission(coupled::doublet(0, 0), coupled::doublet(0, 1)), cplx(0.0, 0.0));
  EXPECT_EQ(s.transmission(coupled::doublet(1, 0), coupled::doublet(0, 0)),
            s.transmission(coupled::doublet(1, 1), coupled::doublet(0, 1)));
}

TEST(WaveguideSolver, ResonantSingletChannelIsTransparent) {
  for (int n = 1; n <= 3; ++n) {
    const Mat2 t = waveguide::channel_amplitudes(DimensionlessParams(4.0, n * pi)).t_doublet;
    Eigen::Vector2cd singlet(0.5, std::sqrt(3.0) / 2.0);
    EXPECT_LT((t * singlet - singlet).norm(), 1e-12);
  }
}
