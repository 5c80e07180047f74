#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

#include <fmt/format.h>

#include "spinfp/scenarios.hpp"

namespace spinfp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

double parse_number(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError(fmt::format("'{}' is not a number", text));
  return v;
}

// "name a=1 b=2" -> name, {a: "1", b: "2"}
std::pair<std::string, std::map<std::string, std::string>> split_keyword(std::string_view spec) {
  spec = trim(spec);
  if (spec.find('=') == std::string_view::npos) {
    std::string compact;
    for (char c : spec)
      if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
    return {lower(compact), {}};
  }
  const auto space = spec.find_first_of(" \t");
  std::string name = lower(spec.substr(0, space));
  std::map<std::string, std::string> args;
  std::string_view rest = space == std::string_view::npos ? std::string_view{} : spec.substr(space);
  while (!(rest = trim(rest)).empty()) {
    const auto end = rest.find_first_of(" \t");
    const std::string_view token = rest.substr(0, end);
    const auto eq = token.find('=');
    if (eq == std::string_view::npos) throw ConfigError(fmt::format("expected key=value, got '{}'", token));
    args[lower(trim(token.substr(0, eq)))] = std::string(trim(token.substr(eq + 1)));
    rest = end == std::string_view::npos ? std::string_view{} : rest.substr(end);
  }
  return {name, args};
}

std::pair<double, double> family_angles(const std::map<std::string, std::string>& args, std::string_view name) {
  for (const auto& [key, value] : args)
    if (key != "theta" && key != "phi") throw ConfigError(fmt::format("{}: unknown parameter '{}'", name, key));
  const auto it_t = args.find("theta");
  const auto it_p = args.find("phi");
  if (it_t == args.end()) throw ConfigError(fmt::format("{} needs theta=", name));
  return {parse_angle(it_t->second), it_p == args.end() ? 0.0 : parse_angle(it_p->second)};
}

Spin parse_spin_letter(std::string_view s) {
  const std::string l = lower(trim(s));
  if (l == "u" || l == "up") return Spin::Up;
  if (l == "d" || l == "down") return Spin::Down;
  throw ConfigError(fmt::format("'{}' is not a spin (u or d)", s));
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string t = lower(trim(text));
  const auto pos = t.find("pi");
  if (pos == std::string::npos) return parse_number(t);

  // [coef][*]pi[/den]
  std::string_view coef = std::string_view(t).substr(0, pos);
  if (!coef.empty() && coef.back() == '*') coef.remove_suffix(1);
  double value = std::numbers::pi;
  if (!trim(coef).empty()) value *= (trim(coef) == "-") ? -1.0 : parse_number(coef);
  std::string_view tail = std::string_view(t).substr(pos + 2);
  tail = trim(tail);
  if (!tail.empty()) {
    if (tail.front() != '/') throw ConfigError(fmt::format("cannot parse angle '{}'", text));
    value /= parse_number(tail.substr(1));
  }
  return value;
}

Vec2 parse_electron_spin(std::string_view spec) {
  const auto [name, args] = split_keyword(spec);
  if (name == "bloch") {
    const auto [theta, phi] = family_angles(args, "bloch");
    return Vec2(std::cos(0.5 * theta), std::polar(std::sin(0.5 * theta), phi));
  }
  if (!args.empty()) throw ConfigError(fmt::format("electron spin '{}' takes no parameters", spec));
  return parse_spin_letter(name) == Spin::Up ? electron::up() : electron::down();
}

Vec4 parse_impurity_state(std::string_view spec) {
  const auto [name, args] = split_keyword(spec);
  if (name == "psi+" || name == "psi-") {
    if (!args.empty()) throw ConfigError(fmt::format("'{}' takes no parameters", name));
    return name == "psi+" ? impurity::psi_plus() : impurity::psi_minus();
  }
  if (name == "family2" || name == "uu_dd") {
    const auto [vartheta, phi] = family_angles(args, name);
    return name == "family2" ? impurity::one_up_family(vartheta, phi) : impurity::aligned_family(vartheta, phi);
  }
  if (!args.empty()) throw ConfigError(fmt::format("product ket '{}' takes no parameters", spec));
  std::string_view ket = name;
  std::string_view first, second;
  if (const auto comma = ket.find(','); comma != std::string_view::npos) {
    first = ket.substr(0, comma);
    second = ket.substr(comma + 1);
  } else if (ket.size() == 2) {
    first = ket.substr(0, 1);
    second = ket.substr(1, 1);
  } else {
    throw ConfigError(fmt::format("unknown impurity state '{}'", spec));
  }
  return impurity::product(parse_spin_letter(first), parse_spin_letter(second));
}

StateFamily family_keyword(std::string_view spec) {
  const std::string t = lower(trim(spec));
  if (t == "family2") return StateFamily::OneUp;
  if (t == "uu_dd") return StateFamily::Aligned;
  return StateFamily::None;
}

}  // namespace spinfp
