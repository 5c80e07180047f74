#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>

#include <fmt/format.h>

#include "spinfp/observables.hpp"
#include "spinfp/scenarios.hpp"

namespace spinfp {

namespace {

constexpr long kMaxSteps = 10'000'000;

struct ScenarioEntry {
  Scenario id;
  std::string_view name;
};

constexpr ScenarioEntry kScenarios[] = {
    {Scenario::Fig2a, "fig2a"}, {Scenario::Fig2b, "fig2b"}, {Scenario::Fig3a, "fig3a"},
    {Scenario::Fig3b, "fig3b"}, {Scenario::Fig4, "fig4"},   {Scenario::Fig5, "fig5"},
    {Scenario::Fig6, "fig6"},   {Scenario::Fig7, "fig7"},   {Scenario::Custom, "custom"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

int parse_int(std::string_view key, std::string_view text) {
  long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(fmt::format("{}: '{}' is not an integer", key, text));
  if (v < 1 || v > kMaxSteps) throw ConfigError(fmt::format("{} must lie in [1, {}], got {}", key, kMaxSteps, v));
  return static_cast<int>(v);
}

double parse_real(std::string_view key, std::string_view text) {
  try {
    const double v = parse_angle(text);
    if (!std::isfinite(v)) throw ConfigError("non-finite");
    return v;
  } catch (const ConfigError&) {
    throw ConfigError(fmt::format("{}: '{}' is not a number", key, text));
  }
}

std::vector<double> parse_list(std::string_view key, std::string_view text) {
  std::vector<double> out;
  while (true) {
    const auto comma = text.find(',');
    const std::string_view item = trim(text.substr(0, comma));
    if (item.empty()) throw ConfigError(fmt::format("{}: empty list entry", key));
    out.push_back(parse_real(key, item));
    if (comma == std::string_view::npos) break;
    text = text.substr(comma + 1);
  }
  return out;
}

std::string fmt_real(double v) { return fmt::format("{:.17g}", v); }

std::string join_reals(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + fmt_real(v[i]);
  return out;
}

SpinVector incident_state(const Vec2& electron, const Vec4& impurities) {
  return SpinVector::tensor(electron, impurities).normalized();
}

const char* ket_name(int i) {
  static const char* names[] = {"uuu", "uud", "udu", "udd", "duu", "dud", "ddu", "ddd"};
  return names[i];
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& e : kScenarios)
    if (e.id == s) return e.name;
  return "custom";
}

Scenario parse_scenario(std::string_view name) {
  name = trim(name);
  for (const auto& e : kScenarios)
    if (e.name == name) return e.id;
  throw ConfigError(fmt::format("unknown scenario '{}'", name));
}

GridKind grid_kind(Scenario s) {
  switch (s) {
    case Scenario::Fig4:
    case Scenario::Fig5:
      return GridKind::Family;
    case Scenario::Fig7:
      return GridKind::Coupling;
    default:
      return GridKind::Phase;
  }
}

SweepConfig default_config(Scenario s) {
  SweepConfig c;
  c.scenario = s;
  switch (s) {
    case Scenario::Fig2a:
    case Scenario::Custom:
      c.impurity_state = "u,d";
      break;
    case Scenario::Fig2b:
      c.impurity_state = "d,u";
      break;
    case Scenario::Fig3a:
      c.impurity_state = "psi+";
      break;
    case Scenario::Fig3b:
      c.impurity_state = "psi-";
      break;
    case Scenario::Fig4:
      c.impurity_state = "family2";
      c.u_list = {10.0};
      break;
    case Scenario::Fig5:
      c.impurity_state = "family2";
      c.u_list = {2.0};
      break;
    case Scenario::Fig6:
      c.impurity_state = "uu_dd theta=pi/4 phi=0";
      break;
    case Scenario::Fig7:
      c.impurity_state = "d,d";
      break;
  }
  return c;
}

void SweepConfig::validate() const {
  const auto steps_ok = [](long n, const char* key) {
    if (n < 1 || n > kMaxSteps) throw ConfigError(fmt::format("{} must lie in [1, {}]", key, kMaxSteps));
  };
  try {
    parse_electron_spin(electron_spin);
    switch (grid_kind(scenario)) {
      case GridKind::Phase:
        steps_ok(theta_steps, "theta_steps");
        if (!(theta_min >= 0.0) || !(theta_max > theta_min)) throw ConfigError("need 0 <= theta_min < theta_max");
        if (u_list.empty()) throw ConfigError("u_list is empty");
        for (double u : u_list)
          if (!(u >= 0.0) || !std::isfinite(u)) throw ConfigError("u_list entries must be finite and >= 0");
        parse_impurity_state(impurity_state);
        break;
      case GridKind::Family:
        steps_ok(vartheta_steps, "vartheta_steps");
        steps_ok(phi_steps, "phi_steps");
        if (static_cast<double>(vartheta_steps) * phi_steps * u_list.size() > kMaxSteps)
          throw ConfigError("family grid exceeds the point cap");
        if (!(vartheta_max >= vartheta_min) || !(phi_max >= phi_min)) throw ConfigError("family grid bounds reversed");
        if (!(theta > 0.0)) throw ConfigError("theta must be > 0");
        if (u_list.empty()) throw ConfigError("u_list is empty");
        if (family_keyword(impurity_state) == StateFamily::None)
          throw ConfigError("family grids need impurity_state = family2 or uu_dd");
        break;
      case GridKind::Coupling:
        steps_ok(u_steps, "u_steps");
        if (!(u_min >= 0.0) || !(u_max > u_min)) throw ConfigError("need 0 <= u_min < u_max");
        if (!(theta > 0.0)) throw ConfigError("theta must be > 0");
        parse_impurity_state(impurity_state);
        break;
    }
    if (grid_kind(scenario) == GridKind::Phase && static_cast<double>(theta_steps) * u_list.size() > kMaxSteps)
      throw ConfigError("phase sweep exceeds the point cap");
  } catch (const std::domain_error& e) {
    throw ConfigError(e.what());
  }
}

SweepConfig parse_config(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("line {}: expected key = value", line_no));
    const std::string key(trim(line.substr(0, eq)));
    if (entries.contains(key)) throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key));
    entries[key] = std::string(trim(line.substr(eq + 1)));
  }

  const auto sc = entries.find("scenario");
  SweepConfig c = default_config(sc == entries.end() ? Scenario::Custom : parse_scenario(sc->second));
  for (const auto& [key, value] : entries) {
    if (key == "scenario") continue;
    if (key == "theta_min") c.theta_min = parse_real(key, value);
    else if (key == "theta_max") c.theta_max = parse_real(key, value);
    else if (key == "theta_steps") c.theta_steps = parse_int(key, value);
    else if (key == "theta") c.theta = parse_real(key, value);
    else if (key == "u_list") c.u_list = parse_list(key, value);
    else if (key == "u_min") c.u_min = parse_real(key, value);
    else if (key == "u_max") c.u_max = parse_real(key, value);
    else if (key == "u_steps") c.u_steps = parse_int(key, value);
    else if (key == "vartheta_min") c.vartheta_min = parse_real(key, value);
    else if (key == "vartheta_max") c.vartheta_max = parse_real(key, value);
    else if (key == "vartheta_steps") c.vartheta_steps = parse_int(key, value);
    else if (key == "phi_min") c.phi_min = parse_real(key, value);
    else if (key == "phi_max") c.phi_max = parse_real(key, value);
    else if (key == "phi_steps") c.phi_steps = parse_int(key, value);
    else if (key == "electron_spin") c.electron_spin = value;
    else if (key == "impurity_state") c.impurity_state = value;
    else if (key == "output") c.output = value;
    else throw ConfigError(fmt::format("unknown key '{}'", key));
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open config '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::vector<SweepPoint> sweep_points(const SweepConfig& cfg) {
  cfg.validate();
  const Vec2 electron = parse_electron_spin(cfg.electron_spin);
  std::vector<SweepPoint> pts;
  const auto inclusive = [](double lo, double hi, int n, int i) {
    return n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
  };

  switch (grid_kind(cfg.scenario)) {
    case GridKind::Phase: {
      const SpinVector chi = incident_state(electron, parse_impurity_state(cfg.impurity_state));
      const double step = (cfg.theta_max - cfg.theta_min) / cfg.theta_steps;
      pts.reserve(cfg.u_list.size() * cfg.theta_steps);
      for (double u : cfg.u_list)
        for (int i = 0; i < cfg.theta_steps; ++i)
          pts.push_back({cfg.theta_min + (i + 1) * step, u, 0.0, 0.0, chi});
      break;
    }
    case GridKind::Family: {
      const StateFamily fam = family_keyword(cfg.impurity_state);
      for (double u : cfg.u_list)
        for (int i = 0; i < cfg.vartheta_steps; ++i) {
          const double vt = inclusive(cfg.vartheta_min, cfg.vartheta_max, cfg.vartheta_steps, i);
          for (int j = 0; j < cfg.phi_steps; ++j) {
            const double phi = inclusive(cfg.phi_min, cfg.phi_max, cfg.phi_steps, j);
            const Vec4 imp = fam == StateFamily::OneUp ? impurity::one_up_family(vt, phi)
                                                        : impurity::aligned_family(vt, phi);
            pts.push_back({cfg.theta, u, vt, phi, incident_state(electron, imp)});
          }
        }
      break;
    }
    case GridKind::Coupling: {
      const SpinVector chi = incident_state(electron, parse_impurity_state(cfg.impurity_state));
      const double step = (cfg.u_max - cfg.u_min) / cfg.u_steps;
      pts.reserve(cfg.u_steps);
      for (int i = 0; i < cfg.u_steps; ++i) pts.push_back({cfg.theta, cfg.u_min + (i + 1) * step, 0.0, 0.0, chi});
      break;
    }
  }
  return pts;
}

SweepRow evaluate_point(const SweepPoint& point) {
  const ScatteredState s = scatter(point.chi, DimensionlessParams(point.u, point.theta));
  return SweepRow{point.theta,
                  point.u,
                  point.vartheta,
                  point.phi,
                  s.transmittivity,
                  polarized_transmittivity(s, Spin::Up),
                  polarized_transmittivity(s, Spin::Down),
                  s.reflectivity,
                  s.transmitted};
}

SweepTable run_sweep_serial(const SweepConfig& cfg) {
  const std::vector<SweepPoint> pts = sweep_points(cfg);
  SweepTable table{cfg, {}};
  table.rows.reserve(pts.size());
  for (const SweepPoint& p : pts) table.rows.push_back(evaluate_point(p));
  return table;
}

SweepTable run_sweep(const SweepConfig& cfg) {
  const std::vector<SweepPoint> pts = sweep_points(cfg);
  SweepTable table{cfg, std::vector<SweepRow>(pts.size())};
  const auto n = static_cast<std::ptrdiff_t>(pts.size());

  std::optional<std::string> failure;
  bool numeric = false;
  std::mutex failure_mutex;

#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      table.rows[i] = evaluate_point(pts[i]);
    } catch (const std::exception& e) {
      std::lock_guard lock(failure_mutex);
      if (!failure) {
        failure = e.what();
        numeric = dynamic_cast<const NumericError*>(&e) != nullptr;
      }
    }
  }

  if (failure) {
    if (numeric) throw NumericError(*failure);
    throw std::runtime_error(*failure);
  }
  return table;
}

void write_csv(const SweepTable& table, std::ostream& out) {
  const SweepConfig& c = table.config;
  const GridKind kind = grid_kind(c.scenario);
  out << "# spinfp sweep\n";
  out << "# scenario = " << scenario_name(c.scenario) << '\n';
  switch (kind) {
    case GridKind::Phase:
      out << "# theta_min = " << fmt_real(c.theta_min) << '\n';
      out << "# theta_max = " << fmt_real(c.theta_max) << '\n';
      out << "# theta_steps = " << c.theta_steps << '\n';
      out << "# u_list = " << join_reals(c.u_list) << '\n';
      break;
    case GridKind::Family:
      out << "# theta = " << fmt_real(c.theta) << '\n';
      out << "# u_list = " << join_reals(c.u_list) << '\n';
      out << "# vartheta_min = " << fmt_real(c.vartheta_min) << '\n';
      out << "# vartheta_max = " << fmt_real(c.vartheta_max) << '\n';
      out << "# vartheta_steps = " << c.vartheta_steps << '\n';
      out << "# phi_min = " << fmt_real(c.phi_min) << '\n';
      out << "# phi_max = " << fmt_real(c.phi_max) << '\n';
      out << "# phi_steps = " << c.phi_steps << '\n';
      break;
    case GridKind::Coupling:
      out << "# theta = " << fmt_real(c.theta) << '\n';
      out << "# u_min = " << fmt_real(c.u_min) << '\n';
      out << "# u_max = " << fmt_real(c.u_max) << '\n';
      out << "# u_steps = " << c.u_steps << '\n';
      break;
  }
  out << "# electron_spin = " << c.electron_spin << '\n';
  out << "# impurity_state = " << c.impurity_state << '\n';
  if (!c.output.empty()) out << "# output = " << c.output << '\n';

  if (kind == GridKind::Family) out << "vartheta,phi,";
  out << "theta,u,T,T_up,T_down";
  for (int i = 0; i < 8; ++i) out << ",re_" << ket_name(i) << ",im_" << ket_name(i);
  out << ",R\n";

  std::string line;
  for (const SweepRow& r : table.rows) {
    line.clear();
    if (kind == GridKind::Family) line += fmt_real(r.vartheta) + ',' + fmt_real(r.phi) + ',';
    line += fmt_real(r.theta) + ',' + fmt_real(r.u) + ',' + fmt_real(r.t_total) + ',' + fmt_real(r.t_up) + ',' +
            fmt_real(r.t_down);
    for (int i = 0; i < 8; ++i)
      line += ',' + fmt_real(r.transmitted[i].real()) + ',' + fmt_real(r.transmitted[i].imag());
    line += ',' + fmt_real(r.r_total) + '\n';
    out << line;
  }
}

std::string to_csv(const SweepTable& table) {
  std::ostringstream ss;
  write_csv(table, ss);
  return ss.str();
}

}  // namespace spinfp
