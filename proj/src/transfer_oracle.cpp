#include "spinfp/transfer_oracle.hpp"

#include <cmath>

#include <fmt/format.h>

#include "spinfp/errors.hpp"

namespace spinfp::oracle {

namespace {

constexpr cplx kI{0.0, 1.0};

// Transfer matrix acting on (A, B), the right- and left-mover amplitudes of
// the eight spin channels, across one matrix-valued delta.
Mat16 site_transfer(const ImpuritySite& site, double k) {
  const SpinOperatorSet& ops = spin_operators();
  const Mat8& exchange = site.impurity == 1 ? ops.sigma_dot_s1 : ops.sigma_dot_s2;
  const Mat8 jump = k * site.coupling * 2.0 * exchange;

  // Decouple the site into scalar delta channels.
  Eigen::SelfAdjointEigenSolver<Mat8> eig(jump);
  if (eig.info() != Eigen::Success) throw NumericError("site matrix diagonalization failed");
  const Mat8& u = eig.eigenvectors();

  const cplx to_local = std::exp(2.0 * kI * k * site.position);
  Mat16 channel = Mat16::Zero();
  for (int j = 0; j < 8; ++j) {
    const cplx q = eig.eigenvalues()[j] / (2.0 * kI * k);
    channel(j, j) = 1.0 + q;
    channel(j, 8 + j) = q / to_local;
    channel(8 + j, j) = -q * to_local;
    channel(8 + j, 8 + j) = 1.0 - q;
  }

  Mat16 rotate = Mat16::Zero();
  rotate.topLeftCorner<8, 8>() = u;
  rotate.bottomRightCorner<8, 8>() = u;
  return rotate * channel * rotate.adjoint();
}

}  // namespace

void ImpurityChain::validate() const {
  if (!std::isfinite(k) || k <= 0.0) throw std::domain_error(fmt::format("wave number must be > 0, got {}", k));
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const ImpuritySite& s = sites[i];
    if (!std::isfinite(s.position)) throw std::domain_error("non-finite impurity position");
    if (!std::isfinite(s.coupling) || s.coupling < 0.0)
      throw std::domain_error(fmt::format("site {} coupling must be >= 0", i));
    if (s.impurity != 1 && s.impurity != 2) throw std::domain_error(fmt::format("site {} has unknown impurity {}", i, s.impurity));
    if (i > 0 && !(s.position > sites[i - 1].position))
      throw std::domain_error(fmt::format("site {} does not lie strictly right of site {}", i, i - 1));
  }
}

ImpurityChain two_impurity_chain(const DimensionlessParams& p) {
  const double half = 0.5 * p.g();
  return ImpurityChain{{{0.0, half, 1}, {1.0, half, 2}}, p.theta()};
}

Mat16 FullScatteringMatrix::s_matrix() const {
  Mat16 s;
  s.topLeftCorner<8, 8>() = r_left;
  s.topRightCorner<8, 8>() = t_right;
  s.bottomLeftCorner<8, 8>() = t_left;
  s.bottomRightCorner<8, 8>() = r_right;
  return s;
}

FullScatteringMatrix oracle_scattering(const ImpurityChain& chain) {
  chain.validate();
  Mat16 total = Mat16::Identity();
  for (const ImpuritySite& site : chain.sites) total = site_transfer(site, chain.k) * total;

  const Mat8 m11 = total.topLeftCorner<8, 8>();
  const Mat8 m12 = total.topRightCorner<8, 8>();
  const Mat8 m21 = total.bottomLeftCorner<8, 8>();
  const Mat8 m22 = total.bottomRightCorner<8, 8>();

  const Eigen::FullPivLU<Mat8> lu(m22);
  if (!lu.isInvertible()) throw NumericError("transfer matrix left-mover block is singular");
  const Mat8 m22_inv = lu.inverse();

  FullScatteringMatrix s;
  s.r_left = -m22_inv * m21;
  s.t_left = m11 + m12 * s.r_left;
  s.t_right = m22_inv;
  s.r_right = m12 * m22_inv;
  return s;
}

OracleTransmission oracle_transmittivity(const ImpurityChain& chain, const SpinVector& chi) {
  if (!chi.is_normalized(1e-10)) throw std::domain_error("incident spin state must be normalized");
  const FullScatteringMatrix s = oracle_scattering(chain);
  const Vec8 out = s.t_left * chi.amplitudes();
  return {out.squaredNorm(), out};
}

double commutator_norm(const FullScatteringMatrix& s, const Mat8& op) {
  Mat16 lifted = Mat16::Zero();
  lifted.topLeftCorner<8, 8>() = op;
  lifted.bottomRightCorner<8, 8>() = op;
  const Mat16 full = s.s_matrix();
  return (lifted * full - full * lifted).norm();
}

}  // namespace spinfp::oracle
