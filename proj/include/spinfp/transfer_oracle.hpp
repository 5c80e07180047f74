#pragma once

#include <vector>

#include "spinfp/params.hpp"
#include "spinfp/spin_algebra.hpp"

namespace spinfp::oracle {

using Mat16 = Eigen::Matrix<cplx, 16, 16>;

struct ImpuritySite {
  double position;
  double coupling;  // g_i; the site potential is g_i * 2 sigma.S_i in units of hbar^2 k / 2m*
  int impurity;     // 1 or 2: which impurity spin the electron exchanges with
};

/// Exchange delta scatterers along the wire, in units hbar^2/2m* = 1.
struct ImpurityChain {
  std::vector<ImpuritySite> sites;
  double k = 1.0;

  /// Throws std::domain_error on k <= 0, negative couplings, unknown impurity
  /// labels or positions that are not strictly increasing.
  void validate() const;
};

/// The two-impurity wire at x = 0 and x = 1 with k = theta and g/2 per site.
ImpurityChain two_impurity_chain(const DimensionlessParams& p);

/// Product-basis scattering for incidence from either side.
struct FullScatteringMatrix {
  Mat8 t_left;   // incident from x = -inf, transmitted to +inf
  Mat8 r_left;
  Mat8 t_right;  // incident from x = +inf
  Mat8 r_right;

  /// [[r_left, t_right], [t_left, r_right]] mapping (in_left, in_right) to (out_left, out_right).
  Mat16 s_matrix() const;
};

FullScatteringMatrix oracle_scattering(const ImpurityChain& chain);

struct OracleTransmission {
  double transmittivity;
  Vec8 amplitudes;  // t_left * chi in the product basis
};

/// Throws std::domain_error unless chi is normalized within 1e-10.
OracleTransmission oracle_transmittivity(const ImpurityChain& chain, const SpinVector& chi);

/// Norm of [diag(O, O), S] over the full two-sided scattering matrix.
double commutator_norm(const FullScatteringMatrix& s, const Mat8& op);

}  // namespace spinfp::oracle
