#include "spinfp/observables.hpp"

#include <algorithm>
#include <cmath>

#include "spinfp/transfer_oracle.hpp"

namespace spinfp {

namespace {

constexpr double kNoSupport = 1e-14;

Vec4 electron_block(const Vec8& v, Spin outcome) { return v.segment<4>(4 * static_cast<int>(outcome)); }

Mat4 spin_flip() {
  // sigma_y (x) sigma_y in the |uu>, |ud>, |du>, |dd> basis
  Mat4 f = Mat4::Zero();
  f(0, 3) = -1.0;
  f(1, 2) = 1.0;
  f(2, 1) = 1.0;
  f(3, 0) = -1.0;
  return f;
}

}  // namespace

ScatteredState scatter(const SpinVector& chi, const DimensionlessParams& p) {
  return scatter(chi, waveguide::scattering_matrices(p));
}

ScatteredState scatter(const SpinVector& chi, const waveguide::ScatteringMatrices& s) {
  if (!chi.is_normalized(1e-10)) throw std::domain_error("incident spin state must be normalized");
  ScatteredState out;
  out.incident = chi;
  const Vec8 c = product_to_coupled(chi.amplitudes());
  out.gamma = s.transmission * c;
  out.reflected_coupled = s.reflection * c;
  out.transmitted = coupled_to_product(out.gamma);
  out.reflected = coupled_to_product(out.reflected_coupled);
  out.transmittivity = out.gamma.squaredNorm();
  out.reflectivity = out.reflected_coupled.squaredNorm();
  return out;
}

double polarized_transmittivity(const ScatteredState& state, Spin outcome) {
  return electron_block(state.transmitted, outcome).squaredNorm();
}

double polarized_transmittivity(const SpinVector& chi, Spin outcome, const DimensionlessParams& p) {
  return polarized_transmittivity(scatter(chi, p), outcome);
}

PostSelectionResult postselect(const ScatteredState& state, Spin outcome) {
  PostSelectionResult r;
  r.outcome = outcome;
  const Vec4 block = electron_block(state.transmitted, outcome);
  r.probability = block.squaredNorm();
  if (r.probability < kNoSupport) return r;
  r.has_support = true;
  r.impurity_state = block / std::sqrt(r.probability);
  r.concurrence = concurrence(r.impurity_state);
  return r;
}

FixedPointSubspace fixed_point_subspace(const DimensionlessParams& p, double tol) {
  const waveguide::ScatteringMatrices s = waveguide::scattering_matrices(p);
  const Mat8 shifted = operator_to_product(s.transmission) - Mat8::Identity();
  const Eigen::JacobiSVD<Mat8> svd(shifted, Eigen::ComputeFullV);
  FixedPointSubspace out;
  const auto& sv = svd.singularValues();
  for (int i = 0; i < 8; ++i) {
    if (sv[i] < tol) {
      ++out.dimension;
      out.basis.emplace_back(Vec8(svd.matrixV().col(i)));
    }
  }
  return out;
}

SymmetryReport symmetry_report(const DimensionlessParams& p) {
  const oracle::FullScatteringMatrix s = oracle::oracle_scattering(oracle::two_impurity_chain(p));
  const SpinOperatorSet& ops = spin_operators();
  return SymmetryReport{oracle::commutator_norm(s, ops.total_spin_sq), oracle::commutator_norm(s, ops.total_sz),
                        oracle::commutator_norm(s, ops.s12_sq), oracle::commutator_norm(s, ops.se2_sq)};
}

double concurrence(const Vec4& state) {
  const double n = state.squaredNorm();
  if (n == 0.0) return 0.0;
  const cplx overlap = (state.transpose() * spin_flip() * state)(0, 0);
  return std::abs(overlap) / n;
}

double concurrence(const Mat4& rho) {
  Eigen::SelfAdjointEigenSolver<Mat4> eig(rho);
  Eigen::Vector4d w = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Mat4 sqrt_rho = eig.eigenvectors() * w.asDiagonal() * eig.eigenvectors().adjoint();
  const Mat4 f = spin_flip();
  const Mat4 rho_tilde = f * rho.conjugate() * f;
  const Mat4 r = sqrt_rho * rho_tilde * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Mat4> eig_r(r);
  Eigen::Vector4d lambda = eig_r.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(lambda.data(), lambda.data() + 4, std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double fidelity(const Vec8& a, const Vec8& b) { return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm()); }

double fidelity(const Vec4& a, const Vec4& b) { return std::norm(a.dot(b)) / (a.squaredNorm() * b.squaredNorm()); }

}  // namespace spinfp
