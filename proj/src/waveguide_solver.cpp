#include "spinfp/waveguide_solver.hpp"

#include <cmath>

#include <fmt/format.h>

namespace spinfp {

double SectorSolution::outgoing_flux() const {
  double flux = 0.0;
  for (const RegionCoefficients& c : channels) flux += std::norm(c.t) + std::norm(c.b_left);
  return flux;
}

namespace waveguide {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kResidualThreshold = 1e-8;

// unknown layout per channel: B_I, A_II, B_II, t
constexpr int kBLeft = 0, kAMid = 1, kBMid = 2, kT = 3;

}  // namespace

SitePotentials quartet_potentials() {
  // s_e1 = s_e2 = 1 throughout the sector, so S_ei^2 = 2.
  SitePotentials v;
  v.first = Eigen::MatrixXd::Constant(1, 1, 0.5 * (2.0 - 1.5));
  v.second = Eigen::MatrixXd::Constant(1, 1, 0.5 * (2.0 - 1.5));
  return v;
}

SitePotentials doublet_potentials(const Eigen::Matrix2d& se1_elements) {
  Eigen::Matrix2d se2_elements = Eigen::Matrix2d::Zero();
  se2_elements(0, 0) = 0.0 * (0.0 + 1.0);
  se2_elements(1, 1) = 1.0 * (1.0 + 1.0);
  SitePotentials v;
  v.first = 0.5 * (se1_elements - 1.5 * Eigen::Matrix2d::Identity());
  v.second = 0.5 * (se2_elements - 1.5 * Eigen::Matrix2d::Identity());
  return v;
}

SectorSolution solve_sector(const DimensionlessParams& p, const SitePotentials& v, Sector sector, int incident) {
  const auto n = static_cast<int>(v.first.rows());
  if (incident < 0 || incident >= n) throw std::out_of_range("incident channel out of range");

  const double k = p.theta();  // x0 = 1
  const double strength = p.g() * k;  // 2 m* J / hbar^2
  const cplx ep = std::exp(kI * k);
  const cplx em = std::exp(-kI * k);
  const auto col = [](int channel, int unknown) { return 4 * channel + unknown; };

  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(4 * n);
  int row = 0;
  for (int c = 0; c < n; ++c) {
    const double a_left = (c == incident) ? 1.0 : 0.0;

    // phi continuous at x = 0: A_I + B_I = A_II + B_II
    a(row, col(c, kBLeft)) = 1.0;
    a(row, col(c, kAMid)) = -1.0;
    a(row, col(c, kBMid)) = -1.0;
    rhs[row++] = -a_left;

    // phi continuous at x = x0: A_II e^{ik} + B_II e^{-ik} = t e^{ik}
    a(row, col(c, kAMid)) = ep;
    a(row, col(c, kBMid)) = em;
    a(row, col(c, kT)) = -ep;
    rhs[row++] = 0.0;

    // jump at x = 0: ik(A_II - B_II) - ik(A_I - B_I) = strength sum_c' V1(c,c') (A_II + B_II)_c'
    a(row, col(c, kAMid)) += kI * k;
    a(row, col(c, kBMid)) -= kI * k;
    a(row, col(c, kBLeft)) += kI * k;
    for (int cp = 0; cp < n; ++cp) {
      a(row, col(cp, kAMid)) -= strength * v.first(c, cp);
      a(row, col(cp, kBMid)) -= strength * v.first(c, cp);
    }
    rhs[row++] = kI * k * a_left;

    // jump at x = x0: ik t e^{ik} - ik(A_II e^{ik} - B_II e^{-ik}) = strength sum_c' V2(c,c') t_c' e^{ik}
    a(row, col(c, kT)) += kI * k * ep;
    a(row, col(c, kAMid)) -= kI * k * ep;
    a(row, col(c, kBMid)) += kI * k * em;
    for (int cp = 0; cp < n; ++cp) a(row, col(cp, kT)) -= strength * v.second(c, cp) * ep;
    rhs[row++] = 0.0;
  }

  const Eigen::VectorXcd x = a.partialPivLu().solve(rhs);
  const double residual = (a * x - rhs).norm() / (a.norm() * x.norm() + rhs.norm());
  if (!std::isfinite(residual) || residual > kResidualThreshold)
    throw NumericError(fmt::format("boundary system solve failed (relative residual {:.3e}) at u={}, theta={}",
                                   residual, p.u(), p.theta()));

  SectorSolution out{sector, incident, {}, residual};
  out.channels.reserve(n);
  for (int c = 0; c < n; ++c) {
    out.channels.push_back(RegionCoefficients{(c == incident) ? cplx(1.0) : cplx(0.0), x[col(c, kBLeft)],
                                              x[col(c, kAMid)], x[col(c, kBMid)], x[col(c, kT)]});
  }
  return out;
}

SectorSolution solve_quartet(const DimensionlessParams& p) {
  return solve_sector(p, quartet_potentials(), Sector::Quartet, 0);
}

SectorSolution solve_doublet(const DimensionlessParams& p, int incident) {
  return solve_doublet(p, incident, recoupling_matrix_elements());
}

SectorSolution solve_doublet(const DimensionlessParams& p, int incident, const Eigen::Matrix2d& se1_elements) {
  if (incident != 0 && incident != 1) throw std::out_of_range("doublet incident channel must be 0 or 1");
  return solve_sector(p, doublet_potentials(se1_elements), Sector::Doublet, incident);
}

ChannelAmplitudes channel_amplitudes(const DimensionlessParams& p) {
  ChannelAmplitudes out;
  const SectorSolution q = solve_quartet(p);
  out.t_quartet = q.channels[0].t;
  out.r_quartet = q.channels[0].b_left;
  const Eigen::Matrix2d se1 = recoupling_matrix_elements();
  for (int incident = 0; incident < 2; ++incident) {
    const SectorSolution d = solve_doublet(p, incident, se1);
    for (int c = 0; c < 2; ++c) {
      out.t_doublet(c, incident) = d.channels[c].t;
      out.r_doublet(c, incident) = d.channels[c].b_left;
    }
  }
  return out;
}

ScatteringMatrices assemble(const ChannelAmplitudes& amps) {
  ScatteringMatrices s{Mat8::Zero(), Mat8::Zero()};
  for (int c : coupled::kQuartet) {
    s.transmission(c, c) = amps.t_quartet;
    s.reflection(c, c) = amps.r_quartet;
  }
  for (int mi = 0; mi < 2; ++mi)
    for (int out = 0; out < 2; ++out)
      for (int in = 0; in < 2; ++in) {
        s.transmission(coupled::doublet(out, mi), coupled::doublet(in, mi)) = amps.t_doublet(out, in);
        s.reflection(coupled::doublet(out, mi), coupled::doublet(in, mi)) = amps.r_doublet(out, in);
      }
  return s;
}

ScatteringMatrices scattering_matrices(const DimensionlessParams& p) { return assemble(channel_amplitudes(p)); }

}  // namespace waveguide
}  // namespace spinfp
