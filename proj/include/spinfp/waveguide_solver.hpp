#pragma once

#include <vector>

#include "spinfp/closed_form.hpp"
#include "spinfp/errors.hpp"
#include "spinfp/params.hpp"
#include "spinfp/spin_algebra.hpp"

namespace spinfp {

/// Plane-wave coefficients of one spin channel. Region I is x < 0, II is
/// 0 < x < x0, III is x > x0 (where only the transmitted wave survives).
struct RegionCoefficients {
  cplx a_left;
  cplx b_left;
  cplx a_mid;
  cplx b_mid;
  cplx t;
};

enum class Sector { Quartet, Doublet };

struct SectorSolution {
  Sector sector;
  int incident;  // s_e2' of the driven channel
  std::vector<RegionCoefficients> channels;  // indexed by outgoing s_e2 (one entry for the quartet)
  double residual;  // ||A x - b|| / (||A|| ||x|| + ||b||)

  /// sum over channels of |t|^2 + |B_I|^2
  double outgoing_flux() const;
};

namespace waveguide {

/// Site potentials in units of J, acting on the channel amplitudes.
struct SitePotentials {
  Eigen::MatrixXd first;   // at x = 0
  Eigen::MatrixXd second;  // at x = x0
};

/// Potentials (1/2)(S_ei^2 - 3/2) restricted to the s = 3/2 sector.
SitePotentials quartet_potentials();
/// Same for the s = 1/2 sector, given <s_e2'|S_e1^2|s_e2>; S_e2^2 is diag(0, 2) there.
SitePotentials doublet_potentials(const Eigen::Matrix2d& se1_elements);

/// Solves continuity plus derivative jumps dphi' = (2m*/hbar^2) J V phi at both sites,
/// in units hbar^2/2m* = 1, x0 = 1, k = theta. Throws NumericError on a bad solve.
SectorSolution solve_sector(const DimensionlessParams& p, const SitePotentials& v, Sector sector, int incident);

SectorSolution solve_quartet(const DimensionlessParams& p);
SectorSolution solve_doublet(const DimensionlessParams& p, int incident);
/// Doublet solve with a caller-supplied S_e1^2 block (used to probe the channel coupling).
SectorSolution solve_doublet(const DimensionlessParams& p, int incident, const Eigen::Matrix2d& se1_elements);

ChannelAmplitudes channel_amplitudes(const DimensionlessParams& p);

/// Left-incidence transmission and reflection in the coupled basis.
struct ScatteringMatrices {
  Mat8 transmission;
  Mat8 reflection;
};

ScatteringMatrices assemble(const ChannelAmplitudes& amps);
ScatteringMatrices scattering_matrices(const DimensionlessParams& p);

}  // namespace waveguide
}  // namespace spinfp
