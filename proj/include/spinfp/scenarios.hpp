#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "spinfp/errors.hpp"
#include "spinfp/params.hpp"
#include "spinfp/spin_algebra.hpp"

namespace spinfp {

// ---------------------------------------------------------------------------
// Physical units

/// Effective mass in bare electron masses, energy in meV, exchange coupling in
/// eV*Angstrom, impurity spacing in nm.
struct PhysicalParams {
  double mass_ratio;
  double energy_mev;
  double coupling_ev_angstrom;
  double spacing_nm;

  /// Mass, energy and spacing must be > 0; the coupling may be 0.
  void validate() const;
};

struct UnitConversion {
  double wave_number;        // k in 1/m
  double density_of_states;  // rho(E) in 1/(J m)
  double u;
  double theta;
};

UnitConversion describe_units(const PhysicalParams& phys);
DimensionlessParams convert_units(const PhysicalParams& phys);

/// Impurity spacing in nm giving k x0 = theta at the given mass and energy.
double spacing_for_phase_nm(double mass_ratio, double energy_mev, double theta);

// ---------------------------------------------------------------------------
// Spin-state mini-language
//
//   electron:   u | d | up | down | bloch theta=<a> phi=<b>
//   impurities: u,d (or ud) | psi+ | psi- | family2 theta=<a> phi=<b> | uu_dd theta=<a> phi=<b>
//
// Angles accept plain numbers and multiples of pi such as pi/4, 3pi/4, 0.5*pi.

double parse_angle(std::string_view text);
Vec2 parse_electron_spin(std::string_view spec);
Vec4 parse_impurity_state(std::string_view spec);

enum class StateFamily { None, OneUp, Aligned };
/// Family named by a bare `family2` or `uu_dd` keyword, None otherwise.
StateFamily family_keyword(std::string_view spec);

// ---------------------------------------------------------------------------
// Sweeps

enum class Scenario { Fig2a, Fig2b, Fig3a, Fig3b, Fig4, Fig5, Fig6, Fig7, Custom };
enum class GridKind { Phase, Family, Coupling };

std::string_view scenario_name(Scenario s);
Scenario parse_scenario(std::string_view name);
GridKind grid_kind(Scenario s);

struct SweepConfig {
  Scenario scenario = Scenario::Custom;
  // phase sweeps over (theta_min, theta_max]
  double theta_min = 0.0;
  double theta_max = 2.0 * std::numbers::pi;
  int theta_steps = 2001;
  std::vector<double> u_list{1.0, 2.0, 10.0};
  // fixed phase for family grids and coupling sweeps
  double theta = std::numbers::pi;
  // coupling sweeps over (u_min, u_max]
  double u_min = 0.0;
  double u_max = 10.0;
  int u_steps = 1000;
  // family grids over [min, max] inclusive
  double vartheta_min = 0.0;
  double vartheta_max = std::numbers::pi;
  int vartheta_steps = 41;
  double phi_min = 0.0;
  double phi_max = std::numbers::pi;
  int phi_steps = 41;
  std::string electron_spin = "u";
  std::string impurity_state = "u,d";
  std::string output;

  /// Throws ConfigError on empty grids, step counts above 1e7 or bad state specs.
  void validate() const;
};

/// Defaults reproducing one figure.
SweepConfig default_config(Scenario s);
/// Parses `key = value` lines; `#` starts a comment. Throws ConfigError.
SweepConfig parse_config(std::string_view text);
SweepConfig load_config(const std::string& path);

struct SweepPoint {
  double theta;
  double u;
  double vartheta;  // family grids only
  double phi;
  SpinVector chi;
};

struct SweepRow {
  double theta;
  double u;
  double vartheta;
  double phi;
  double t_total;
  double t_up;
  double t_down;
  double r_total;
  Vec8 transmitted;  // product basis
};

struct SweepTable {
  SweepConfig config;
  std::vector<SweepRow> rows;
};

/// Grid points in output order (row-major: u or vartheta outermost).
std::vector<SweepPoint> sweep_points(const SweepConfig& cfg);
SweepRow evaluate_point(const SweepPoint& point);

/// OpenMP evaluation; rows come back in grid order.
SweepTable run_sweep(const SweepConfig& cfg);
/// Single-threaded reference for run_sweep.
SweepTable run_sweep_serial(const SweepConfig& cfg);

void write_csv(const SweepTable& table, std::ostream& out);
std::string to_csv(const SweepTable& table);

// ---------------------------------------------------------------------------
// Verification harness

struct CriterionResult {
  int id;
  std::string name;
  bool passed;
  std::string detail;
};

struct VerificationReport {
  std::vector<CriterionResult> criteria;
  bool all_passed() const;
};

VerificationReport verify_figures();
void print_report(const VerificationReport& report, std::ostream& out);

}  // namespace spinfp
