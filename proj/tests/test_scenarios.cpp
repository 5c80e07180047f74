#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "spinfp/scenarios.hpp"

using namespace spinfp;
using std::numbers::pi;

TEST(Angles, ParsesNumbersAndMultiplesOfPi) {
  EXPECT_DOUBLE_EQ(parse_angle("0.25"), 0.25);
  EXPECT_DOUBLE_EQ(parse_angle("pi"), pi);
  EXPECT_DOUBLE_EQ(parse_angle("pi/4"), pi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("3pi/4"), 3 * pi / 4);
  EXPECT_DOUBLE_EQ(parse_angle("0.5*pi"), 0.5 * pi);
  EXPECT_DOUBLE_EQ(parse_angle(" 2pi "), 2 * pi);
  EXPECT_THROW(parse_angle("pie"), ConfigError);
  EXPECT_THROW(parse_angle(""), ConfigError);
  EXPECT_THROW(parse_angle("1.0x"), ConfigError);
}

TEST(SpinSpec, ElectronStates) {
  EXPECT_EQ(parse_electron_spin("u"), electron::up());
  EXPECT_EQ(parse_electron_spin("Down"), electron::down());
  const Vec2 b = parse_electron_spin("bloch theta=pi/2 phi=pi/2");
  EXPECT_NEAR(std::abs(b[0] - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b[1] - cplx(0.0, 1.0 / std::sqrt(2.0))), 0.0, 1e-15);
  EXPECT_THROW(parse_electron_spin("x"), ConfigError);
  EXPECT_THROW(parse_electron_spin("u theta=1"), ConfigError);
  EXPECT_THROW(parse_electron_spin("bloch phi=1"), ConfigError);
}

TEST(SpinSpec, ImpurityStates) {
  EXPECT_EQ(parse_impurity_state("u,d"), impurity::product(Spin::Up, Spin::Down));
  EXPECT_EQ(parse_impurity_state("u, d"), impurity::product(Spin::Up, Spin::Down));
  EXPECT_EQ(parse_impurity_state("du"), impurity::product(Spin::Down, Spin::Up));
  EXPECT_EQ(parse_impurity_state("psi-"), impurity::psi_minus());
  EXPECT_EQ(parse_impurity_state("PSI+"), impurity::psi_plus());
  EXPECT_LT((parse_impurity_state("family2 theta=pi/4 phi=pi") - impurity::psi_minus()).norm(), 1e-15);
  EXPECT_LT((parse_impurity_state("uu_dd theta=0.3 phi=1") - impurity::aligned_family(0.3, 1.0)).norm(), 1e-15);
  EXPECT_THROW(parse_impurity_state("psi"), ConfigError);
  EXPECT_THROW(parse_impurity_state("u,x"), ConfigError);
  EXPECT_THROW(parse_impurity_state("family2 theta=1 rho=2"), ConfigError);
  EXPECT_EQ(family_keyword("family2"), StateFamily::OneUp);
  EXPECT_EQ(family_keyword(" uu_dd "), StateFamily::Aligned);
  EXPECT_EQ(family_keyword("psi+"), StateFamily::None);
}

TEST(Scenarios, NamesRoundTrip) {
  for (Scenario s : {Scenario::Fig2a, Scenario::Fig2b, Scenario::Fig3a, Scenario::Fig3b, Scenario::Fig4,
                     Scenario::Fig5, Scenario::Fig6, Scenario::Fig7, Scenario::Custom})
    EXPECT_EQ(parse_scenario(scenario_name(s)), s);
  EXPECT_THROW(parse_scenario("fig9"), ConfigError);
  EXPECT_EQ(grid_kind(Scenario::Fig4), GridKind::Family);
  EXPECT_EQ(grid_kind(Scenario::Fig7), GridKind::Coupling);
  EXPECT_EQ(grid_kind(Scenario::Fig3a), GridKind::Phase);
}

TEST(Config, ParsesKeyValueLines) {
  const SweepConfig c = parse_config(
      "# comment\n"
      "scenario = fig3b\n"
      "theta_min = 0\n"
      "theta_max = 2pi   # trailing comment\n"
      "theta_steps = 50\n"
      "u_list = 1, 2.5\n"
      "electron_spin = d\n"
      "output = out.csv\n");
  EXPECT_EQ(c.scenario, Scenario::Fig3b);
  EXPECT_DOUBLE_EQ(c.theta_max, 2 * pi);
  EXPECT_EQ(c.theta_steps, 50);
  EXPECT_EQ(c.u_list, (std::vector<double>{1.0, 2.5}));
  EXPECT_EQ(c.electron_spin, "d");
  EXPECT_EQ(c.impurity_state, "psi-");
  EXPECT_EQ(c.output, "out.csv");
}

TEST(Config, RejectsBadInput) {
  EXPECT_THROW(parse_config("bogus = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("theta_steps\n"), ConfigError);
  EXPECT_THROW(parse_config("theta_steps = 0\n"), ConfigError);
  EXPECT_THROW(parse_config("theta_steps = 10000001\n"), ConfigError);
  EXPECT_THROW(parse_config("theta_steps = 2.5\n"), ConfigError);
  EXPECT_THROW(parse_config("u_list = 1,,2\n"), ConfigError);
  EXPECT_THROW(parse_config("u_list = -1\n"), ConfigError);
  EXPECT_THROW(parse_config("theta_min = 3\ntheta_max = 1\n"), ConfigError);
  EXPECT_THROW(parse_config("impurity_state = zz\n"), ConfigError);
  EXPECT_THROW(parse_config("scenario = fig4\nimpurity_state = psi+\n"), ConfigError);
  EXPECT_THROW(parse_config("u_list = 1\nu_list = 2\n"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/spinfp.cfg"), ConfigError);
}

TEST(Sweep, PhaseGridExcludesLowerEndpoint) {
  SweepConfig c = default_config(Scenario::Fig2a);
  c.theta_steps = 4;
  c.u_list = {1.0, 2.0};
  const auto pts = sweep_points(c);
  ASSERT_EQ(pts.size(), 8u);
  EXPECT_DOUBLE_EQ(pts[0].theta, pi / 2);
  EXPECT_DOUBLE_EQ(pts[3].theta, 2 * pi);
  EXPECT_EQ(pts[3].u, 1.0);
  EXPECT_EQ(pts[4].u, 2.0);
}

TEST(Sweep, FamilyGridIsInclusive) {
  SweepConfig c = default_config(Scenario::Fig4);
  c.vartheta_steps = 3;
  c.phi_steps = 2;
  const auto pts = sweep_points(c);
  ASSERT_EQ(pts.size(), 6u);
  EXPECT_EQ(pts[0].vartheta, 0.0);
  EXPECT_DOUBLE_EQ(pts[5].vartheta, pi);
  EXPECT_DOUBLE_EQ(pts[1].phi, pi);
  EXPECT_DOUBLE_EQ(pts[0].theta, pi);
}

TEST(Sweep, ParallelMatchesSerialByteForByte) {
  for (Scenario s : {Scenario::Fig3a, Scenario::Fig5, Scenario::Fig7}) {
    SweepConfig c = default_config(s);
    c.theta_steps = 301;
    c.vartheta_steps = 9;
    c.phi_steps = 7;
    c.u_steps = 200;
    EXPECT_EQ(to_csv(run_sweep(c)), to_csv(run_sweep_serial(c)));
  }
}

TEST(Sweep, RerunsAreIdentical) {
  SweepConfig c = default_config(Scenario::Fig6);
  c.theta_steps = 200;
  EXPECT_EQ(to_csv(run_sweep(c)), to_csv(run_sweep(c)));
}

TEST(Sweep, RowsAreBounded) {
  SweepConfig c = default_config(Scenario::Fig2b);
  c.theta_steps = 500;
  for (const SweepRow& r : run_sweep(c).rows) {
    EXPECT_GE(r.t_total, 0.0);
    EXPECT_LE(r.t_total, 1.0 + 1e-12);
    EXPECT_LE(r.t_up, r.t_total + 1e-15);
    EXPECT_NEAR(r.t_up + r.t_down, r.t_total, 1e-14);
    EXPECT_NEAR(r.t_total + r.r_total, 1.0, 1e-11);
  }
}

TEST(Sweep, SingletPeaksReachUnity) {
  SweepConfig c = default_config(Scenario::Fig3b);
  c.theta_steps = 4;  // theta = pi/2, pi, 3pi/2, 2pi
  for (const SweepRow& r : run_sweep(c).rows)
    if (std::abs(std::remainder(r.theta, pi)) < 1e-12) EXPECT_NEAR(r.t_total, 1.0, 1e-10);
}

TEST(Csv, HeaderAndColumns) {
  SweepConfig c = default_config(Scenario::Fig2a);
  c.theta_steps = 2;
  c.u_list = {1.0};
  const std::string csv = to_csv(run_sweep(c));
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# spinfp sweep");
  std::vector<std::string> data;
  std::string header;
  while (std::getline(in, line)) {
    if (line.starts_with('#')) continue;
    if (header.empty()) header = line;
    else data.push_back(line);
  }
  EXPECT_TRUE(header.starts_with("theta,u,T,T_up,T_down,"));
  EXPECT_TRUE(header.ends_with(",R"));
  EXPECT_EQ(std::count(header.begin(), header.end(), ','), 21);
  ASSERT_EQ(data.size(), 2u);
  EXPECT_EQ(std::count(data[0].begin(), data[0].end(), ','), 21);
  EXPECT_TRUE(data[1].starts_with("6.2831853071795862,1,"));
  EXPECT_NE(csv.find("# impurity_state = u,d"), std::string::npos);
}

TEST(Csv, FamilyGridHasAngleColumns) {
  SweepConfig c = default_config(Scenario::Fig5);
  c.vartheta_steps = 2;
  c.phi_steps = 2;
  const std::string csv = to_csv(run_sweep(c));
  EXPECT_NE(csv.find("\nvartheta,phi,theta,u,T,"), std::string::npos);
}

TEST(Units, ReferenceConversion) {
  const UnitConversion c = describe_units({0.067, 2.0, 1.0, 53.0});
  EXPECT_GT(c.u, 0.8);
  EXPECT_LT(c.u, 1.2);
  EXPECT_NEAR(c.u, 0.944, 5e-3);
  const double x0 = spacing_for_phase_nm(0.067, 2.0, pi);
  EXPECT_GT(x0, 40.0);
  EXPECT_LT(x0, 70.0);
  const DimensionlessParams p = convert_units({0.067, 2.0, 1.0, x0});
  EXPECT_NEAR(p.theta(), pi, 1e-12);
}

TEST(Units, ZeroCouplingAndErrors) {
  EXPECT_EQ(convert_units({0.067, 2.0, 0.0, 10.0}).u(), 0.0);
  EXPECT_THROW(convert_units({0.0, 2.0, 1.0, 10.0}), std::domain_error);
  EXPECT_THROW(convert_units({0.067, -2.0, 1.0, 10.0}), std::domain_error);
  EXPECT_THROW(convert_units({0.067, 2.0, -1.0, 10.0}), std::domain_error);
  EXPECT_THROW(convert_units({0.067, 2.0, 1.0, 0.0}), std::domain_error);
  EXPECT_THROW(spacing_for_phase_nm(0.067, 2.0, 0.0), std::domain_error);
}

TEST(Cli, ConfigFileRoundTrip) {
  const auto path = std::filesystem::temp_directory_path() / "spinfp_test.cfg";
  {
    std::ofstream out(path);
    out << "scenario = fig7\nu_steps = 10\n";
  }
  const SweepConfig c = load_config(path.string());
  EXPECT_EQ(c.scenario, Scenario::Fig7);
  EXPECT_EQ(c.u_steps, 10);
  EXPECT_EQ(run_sweep(c).rows.size(), 10u);
  std::filesystem::remove(path);
}
