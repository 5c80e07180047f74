#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "spinfp/scenarios.hpp"

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kNumericError = 2, kVerifyFailed = 3 };

int do_sweep(const std::string& config_path, const std::string& output_override) {
  spinfp::SweepConfig cfg = spinfp::load_config(config_path);
  if (!output_override.empty()) cfg.output = output_override;
  const spinfp::SweepTable table = spinfp::run_sweep(cfg);
  if (cfg.output.empty() || cfg.output == "-") {
    spinfp::write_csv(table, std::cout);
    return kOk;
  }
  std::ofstream out(cfg.output, std::ios::binary);
  if (!out) throw spinfp::ConfigError(fmt::format("cannot open output file '{}'", cfg.output));
  spinfp::write_csv(table, out);
  if (!out) throw spinfp::ConfigError(fmt::format("write to '{}' failed", cfg.output));
  std::cerr << fmt::format("wrote {} rows to {}\n", table.rows.size(), cfg.output);
  return kOk;
}

int do_verify() {
  const spinfp::VerificationReport report = spinfp::verify_figures();
  spinfp::print_report(report, std::cout);
  return report.all_passed() ? kOk : kVerifyFailed;
}

int do_convert(const spinfp::PhysicalParams& phys) {
  const spinfp::UnitConversion c = spinfp::describe_units(phys);
  std::cout << fmt::format("k     = {:.17g} 1/m\n", c.wave_number);
  std::cout << fmt::format("rho   = {:.17g} 1/(J m)\n", c.density_of_states);
  std::cout << fmt::format("u     = {:.17g}\n", c.u);
  std::cout << fmt::format("theta = {:.17g}\n", c.theta);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-dependent transmission through a pair of magnetic impurities"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  auto* sweep = app.add_subcommand("sweep", "Evaluate a parameter sweep and write CSV");
  sweep->add_option("--config", config_path, "key = value config file")->required();
  sweep->add_option("-o,--output", output, "Output path, overrides the config ('-' for stdout)");

  auto* verify = app.add_subcommand("verify", "Run the acceptance checks");

  spinfp::PhysicalParams phys{};
  auto* convert = app.add_subcommand("convert", "Convert physical parameters to (u, theta)");
  convert->add_option("--mstar", phys.mass_ratio, "Effective mass in units of m_e")->required();
  convert->add_option("--energy-mev", phys.energy_mev, "Electron energy in meV")->required();
  convert->add_option("--coupling-evA", phys.coupling_ev_angstrom, "Exchange coupling in eV*Angstrom")->required();
  convert->add_option("--x0-nm", phys.spacing_nm, "Impurity spacing in nm")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*sweep) return do_sweep(config_path, output);
    if (*verify) return do_verify();
    if (*convert) return do_convert(phys);
  } catch (const spinfp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const spinfp::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumericError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumericError;
  }
  return kOk;
}
