#pragma once

#include <vector>

#include "spinfp/params.hpp"
#include "spinfp/spin_algebra.hpp"
#include "spinfp/waveguide_solver.hpp"

namespace spinfp {

/// Outcome of sending |k>|chi> through the wire.
struct ScatteredState {
  SpinVector incident;
  Vec8 gamma;                  // transmitted, coupled basis
  Vec8 transmitted;            // transmitted, product basis
  Vec8 reflected_coupled;
  Vec8 reflected;              // product basis
  double transmittivity = 0.0;
  double reflectivity = 0.0;
};

/// Impurity state left behind when the transmitted electron is found in `outcome`.
struct PostSelectionResult {
  Spin outcome = Spin::Up;
  double probability = 0.0;  // per injected electron, transmission factor included
  bool has_support = false;  // false when probability < 1e-14
  Vec4 impurity_state = Vec4::Zero();  // normalized, indexed 2a + b
  double concurrence = 0.0;
};

struct FixedPointSubspace {
  int dimension = 0;
  std::vector<SpinVector> basis;  // orthonormal, product basis
};

/// Frobenius norms of [O, S] over the full two-sided scattering matrix.
struct SymmetryReport {
  double total_spin_sq;
  double total_sz;
  double s12_sq;
  double se2_sq;
};

/// Throws std::domain_error unless chi is normalized within 1e-10.
ScatteredState scatter(const SpinVector& chi, const DimensionlessParams& p);
ScatteredState scatter(const SpinVector& chi, const waveguide::ScatteringMatrices& s);

/// Probability of transmission with the outgoing electron projected on `outcome`.
double polarized_transmittivity(const SpinVector& chi, Spin outcome, const DimensionlessParams& p);
double polarized_transmittivity(const ScatteredState& state, Spin outcome);

PostSelectionResult postselect(const ScatteredState& state, Spin outcome);

/// Eigenvalue-1 subspace of the transmission matrix: right singular vectors of
/// T - I with singular value below tol.
FixedPointSubspace fixed_point_subspace(const DimensionlessParams& p, double tol = 1e-8);

SymmetryReport symmetry_report(const DimensionlessParams& p);

/// 2 |<psi| sigma_y (x) sigma_y |psi*>| for a (not necessarily normalized) two-qubit state.
double concurrence(const Vec4& state);
/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const Mat4& rho);

/// |<a|b>|^2 / (<a|a><b|b>)
double fidelity(const Vec8& a, const Vec8& b);
double fidelity(const Vec4& a, const Vec4& b);

}  // namespace spinfp
