#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "spinfp/scenarios.hpp"

namespace spinfp {

namespace {

// CODATA 2018
constexpr double kHbar = 1.054571817e-34;         // J s
constexpr double kElectronMass = 9.1093837015e-31;  // kg
constexpr double kElectronVolt = 1.602176634e-19;  // J
constexpr double kAngstrom = 1e-10;
constexpr double kNanometre = 1e-9;

double wave_number(double mass_ratio, double energy_mev) {
  const double m = mass_ratio * kElectronMass;
  const double e = energy_mev * 1e-3 * kElectronVolt;
  return std::sqrt(2.0 * m * e) / kHbar;
}

}  // namespace

void PhysicalParams::validate() const {
  const auto positive = [](double v, const char* what) {
    if (!std::isfinite(v) || v <= 0.0) throw std::domain_error(fmt::format("{} must be > 0, got {}", what, v));
  };
  positive(mass_ratio, "effective mass");
  positive(energy_mev, "energy");
  positive(spacing_nm, "impurity spacing");
  if (!std::isfinite(coupling_ev_angstrom) || coupling_ev_angstrom < 0.0)
    throw std::domain_error(fmt::format("coupling must be >= 0, got {}", coupling_ev_angstrom));
}

UnitConversion describe_units(const PhysicalParams& phys) {
  phys.validate();
  const double m = phys.mass_ratio * kElectronMass;
  const double e = phys.energy_mev * 1e-3 * kElectronVolt;
  UnitConversion c;
  c.wave_number = wave_number(phys.mass_ratio, phys.energy_mev);
  c.density_of_states = std::sqrt(2.0 * m / e) / (std::numbers::pi * kHbar);
  c.u = c.density_of_states * phys.coupling_ev_angstrom * kElectronVolt * kAngstrom;
  c.theta = c.wave_number * phys.spacing_nm * kNanometre;
  return c;
}

DimensionlessParams convert_units(const PhysicalParams& phys) {
  const UnitConversion c = describe_units(phys);
  return DimensionlessParams(c.u, c.theta);
}

double spacing_for_phase_nm(double mass_ratio, double energy_mev, double theta) {
  if (!(mass_ratio > 0.0) || !(energy_mev > 0.0) || !(theta > 0.0))
    throw std::domain_error("mass, energy and phase must be > 0");
  return theta / wave_number(mass_ratio, energy_mev) / kNanometre;
}

}  // namespace spinfp
