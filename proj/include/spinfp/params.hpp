#pragma once

#include <numbers>

namespace spinfp {

/// Coupling u = rho(E) J and phase theta = k x0. Every amplitude depends on these alone.
class DimensionlessParams {
 public:
  /// Throws std::domain_error unless u is finite and >= 0 and theta is finite and > 0.
  DimensionlessParams(double u, double theta);

  double u() const { return u_; }
  double theta() const { return theta_; }
  /// g = pi u = 2 m* J / (hbar^2 k)
  double g() const { return std::numbers::pi * u_; }

 private:
  double u_;
  double theta_;
};

}  // namespace spinfp
