#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mortarfem/errors.hpp"
#include "mortarfem/geometry.hpp"

namespace mortarfem {

/// Per-subdomain mesh override block.
struct SubdomainConfig {
  int nx = -1, ny = -1;
  int degree = -1;     // -1: inherit the global degree
  double alpha = -1.0; // <= 0: inherit the alpha list entry
};

/// Parsed run description. The grammar is flat `key = value` lines plus one
/// nesting level of `[subdomain N]` blocks; `#` starts a comment. Numbers
/// accept plain decimals and fractions like 1/6.
struct RunConfig {
  std::string partition = "lshape"; // preset name or "explicit"
  std::vector<Rect> rects;          // used when partition = explicit
  int degree = 1;
  std::vector<double> alpha{1.0};   // broadcast if a single entry
  std::string solution;             // manufactured solution preset
  std::string mode = "parabolic";   // parabolic | stationary
  double final_time = 1.0;
  std::string r_rule = "h2"; // h2 | fixed
  double r = 0.0;            // used when r_rule = fixed
  std::vector<double> r_list;
  std::vector<double> h_list;
  std::string u0_mode = "interpolant"; // interpolant | elliptic-projection
  bool consistency_flux = false;
  std::map<int, int> mortar_overrides;
  int s = 1;
  std::string out_dir = "out";
  std::map<int, SubdomainConfig> subdomain_overrides;
  std::string preset_name = "explicit";
};

namespace detail {

inline double parse_number(const std::string& text, const std::string& where) {
  const auto slash = text.find('/');
  try {
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash), den = text.substr(slash + 1);
    const double a = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const double b = std::stod(den, &used);
    if (used != den.size()) throw std::invalid_argument(text);
    if (b == 0.0) throw std::invalid_argument(text);
    return a / b;
  } catch (const std::exception&) {
    throw ValidationError(where + ": cannot parse number '" + text + "'");
  }
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

inline bool parse_on_off(const std::string& v, const std::string& where) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ValidationError(where + ": expected on or off, got '" + v + "'");
}

} // namespace detail

/// Parse a config stream. Errors carry `source:line:` prefixes.
inline RunConfig parse_config_stream(std::istream& in, const std::string& source) {
  RunConfig cfg;
  cfg.alpha.clear();
  cfg.preset_name = "file:" + source;
  std::string line;
  int lineno = 0;
  int section = -1; // -1: top level, otherwise subdomain index
  bool saw_alpha = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = source + ":" + std::to_string(lineno);
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ValidationError(where + ": unterminated section header");
      const std::vector<std::string> parts =
          detail::split_ws(line.substr(1, line.size() - 2));
      if (parts.size() != 2 || parts[0] != "subdomain")
        throw ValidationError(where + ": expected [subdomain N]");
      section = static_cast<int>(detail::parse_number(parts[1], where));
      if (section < 0) throw ValidationError(where + ": subdomain index must be >= 0");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(where + ": expected key = value");
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ValidationError(where + ": empty key or value");

    if (section >= 0) {
      SubdomainConfig& sc = cfg.subdomain_overrides[section];
      if (key == "nx") sc.nx = static_cast<int>(detail::parse_number(value, where));
      else if (key == "ny") sc.ny = static_cast<int>(detail::parse_number(value, where));
      else if (key == "degree") sc.degree = static_cast<int>(detail::parse_number(value, where));
      else if (key == "alpha") sc.alpha = detail::parse_number(value, where);
      else throw ValidationError(where + ": unknown subdomain key '" + key + "'");
      continue;
    }
    if (key == "partition") cfg.partition = value;
    else if (key == "rect") {
      const std::vector<std::string> parts = detail::split_ws(value);
      if (parts.size() != 4)
        throw ValidationError(where + ": rect needs 4 numbers (xmin ymin xmax ymax)");
      Rect r;
      r.xmin = detail::parse_number(parts[0], where);
      r.ymin = detail::parse_number(parts[1], where);
      r.xmax = detail::parse_number(parts[2], where);
      r.ymax = detail::parse_number(parts[3], where);
      cfg.rects.push_back(r);
    } else if (key == "degree") {
      cfg.degree = static_cast<int>(detail::parse_number(value, where));
    } else if (key == "alpha") {
      cfg.alpha.clear();
      for (const std::string& tok : detail::split_ws(value))
        cfg.alpha.push_back(detail::parse_number(tok, where));
      saw_alpha = true;
    } else if (key == "solution") {
      cfg.solution = value;
    } else if (key == "mode") {
      cfg.mode = value;
    } else if (key == "T") {
      cfg.final_time = detail::parse_number(value, where);
    } else if (key == "r_rule") {
      cfg.r_rule = value;
    } else if (key == "r") {
      cfg.r = detail::parse_number(value, where);
    } else if (key == "r_list") {
      cfg.r_list.clear();
      for (const std::string& tok : detail::split_ws(value))
        cfg.r_list.push_back(detail::parse_number(tok, where));
    } else if (key == "h_list") {
      cfg.h_list.clear();
      for (const std::string& tok : detail::split_ws(value))
        cfg.h_list.push_back(detail::parse_number(tok, where));
    } else if (key == "u0") {
      cfg.u0_mode = value;
    } else if (key == "consistency_flux") {
      cfg.consistency_flux = detail::parse_on_off(value, where);
    } else if (key == "mortar") {
      for (const std::string& tok : detail::split_ws(value)) {
        const auto colon = tok.find(':');
        if (colon == std::string::npos)
          throw ValidationError(where + ": mortar override needs interface:subdomain");
        const int gid = static_cast<int>(detail::parse_number(tok.substr(0, colon), where));
        const int sub = static_cast<int>(detail::parse_number(tok.substr(colon + 1), where));
        cfg.mortar_overrides[gid] = sub;
      }
    } else if (key == "s") {
      cfg.s = static_cast<int>(detail::parse_number(value, where));
    } else if (key == "out") {
      cfg.out_dir = value;
    } else {
      throw ValidationError(where + ": unknown key '" + key + "'");
    }
  }
  if (!saw_alpha) cfg.alpha = {1.0};
  return cfg;
}

inline RunConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file '" + path + "'");
  return parse_config_stream(in, path);
}

/// Structural validation with field names in the messages. Geometry and
/// alpha-count checks run later against the resolved partition.
inline void validate_config(const RunConfig& cfg) {
  if (cfg.partition != "explicit" && cfg.partition != "lshape" &&
      cfg.partition != "unit-square-2x1")
    throw ValidationError("config field 'partition': unknown value '" + cfg.partition + "'");
  if (cfg.partition == "explicit" && cfg.rects.empty())
    throw ValidationError("config field 'rect': explicit partition needs rect lines");
  if (cfg.degree < 1) throw ValidationError("config field 'degree': must be >= 1");
  if (cfg.alpha.empty()) throw ValidationError("config field 'alpha': must not be empty");
  for (double a : cfg.alpha)
    if (!(a > 0.0)) throw ValidationError("config field 'alpha': entries must be positive");
  if (cfg.solution.empty())
    throw ValidationError("config field 'solution': a manufactured solution is required");
  if (cfg.mode != "parabolic" && cfg.mode != "stationary")
    throw ValidationError("config field 'mode': expected parabolic or stationary");
  if (!(cfg.final_time > 0.0)) throw ValidationError("config field 'T': must be positive");
  if (cfg.r_rule != "h2" && cfg.r_rule != "fixed")
    throw ValidationError("config field 'r_rule': expected h2 or fixed");
  if (cfg.r_rule == "fixed" && cfg.mode == "parabolic" && cfg.r_list.empty() && !(cfg.r > 0.0))
    throw ValidationError("config field 'r': fixed rule needs a positive time step");
  if (cfg.u0_mode != "interpolant" && cfg.u0_mode != "elliptic-projection")
    throw ValidationError("config field 'u0': expected interpolant or elliptic-projection");
  if (cfg.s < 0 || cfg.s > 2) throw ValidationError("config field 's': must be 0, 1, or 2");
  if (cfg.h_list.empty() && cfg.subdomain_overrides.empty())
    throw ValidationError("config field 'h_list': needed unless subdomain blocks give meshes");
  for (std::size_t i = 1; i < cfg.h_list.size(); ++i)
    if (!(cfg.h_list[i] < cfg.h_list[i - 1]))
      throw ValidationError("config field 'h_list': entries must be strictly decreasing");
  for (double h : cfg.h_list)
    if (!(h > 0.0)) throw ValidationError("config field 'h_list': entries must be positive");
  for (double r : cfg.r_list)
    if (!(r > 0.0)) throw ValidationError("config field 'r_list': entries must be positive");
  for (std::size_t i = 1; i < cfg.r_list.size(); ++i)
    if (!(cfg.r_list[i] < cfg.r_list[i - 1]))
      throw ValidationError("config field 'r_list': entries must be strictly decreasing");
}

/// Built-in experiment presets.
inline RunConfig config_preset(const std::string& name) {
  RunConfig cfg;
  cfg.preset_name = name;
  if (name == "table1") {
    cfg.partition = "lshape";
    cfg.degree = 1;
    cfg.alpha = {1.0, 10.0, 10.0};
    cfg.solution = "exp-bubble-cubic";
    cfg.mode = "parabolic";
    cfg.final_time = 1.0;
    cfg.r_rule = "h2";
    cfg.h_list = {1.0 / 6, 1.0 / 8, 1.0 / 10, 1.0 / 12, 1.0 / 14};
    cfg.u0_mode = "interpolant";
    cfg.consistency_flux = true;
  } else if (name == "smooth-k2") {
    cfg.partition = "unit-square-2x1";
    cfg.degree = 2;
    cfg.alpha = {1.0, 1.0};
    cfg.solution = "sine-exp";
    cfg.mode = "stationary";
    cfg.final_time = 1.0;
    cfg.h_list = {1.0 / 4, 1.0 / 6, 1.0 / 8, 1.0 / 12, 1.0 / 16};
    cfg.s = 1;
    cfg.consistency_flux = true;
  } else if (name == "temporal-k2") {
    cfg.partition = "unit-square-2x1";
    cfg.degree = 2;
    cfg.alpha = {1.0, 1.0};
    cfg.solution = "exp-bubble-quad";
    cfg.mode = "parabolic";
    cfg.final_time = 1.0;
    cfg.r_rule = "fixed";
    cfg.h_list = {1.0 / 16};
    cfg.r_list = {1.0 / 10, 1.0 / 20, 1.0 / 40, 1.0 / 80, 1.0 / 160};
    cfg.u0_mode = "interpolant";
  } else {
    throw ValidationError("config_preset: unknown preset '" + name + "'");
  }
  return cfg;
}

/// Canonical text form: stable key order, 17 significant digits, so equal
/// configs serialize identically.
inline std::string canonical_config(const RunConfig& cfg) {
  std::ostringstream out;
  out.precision(17);
  out << "partition = " << cfg.partition << "\n";
  for (const Rect& r : cfg.rects)
    out << "rect = " << r.xmin << " " << r.ymin << " " << r.xmax << " " << r.ymax << "\n";
  out << "degree = " << cfg.degree << "\n";
  out << "alpha =";
  for (double a : cfg.alpha) out << " " << a;
  out << "\n";
  out << "solution = " << cfg.solution << "\n";
  out << "mode = " << cfg.mode << "\n";
  out << "T = " << cfg.final_time << "\n";
  out << "r_rule = " << cfg.r_rule << "\n";
  if (cfg.r > 0.0) out << "r = " << cfg.r << "\n";
  if (!cfg.r_list.empty()) {
    out << "r_list =";
    for (double r : cfg.r_list) out << " " << r;
    out << "\n";
  }
  if (!cfg.h_list.empty()) {
    out << "h_list =";
    for (double h : cfg.h_list) out << " " << h;
    out << "\n";
  }
  out << "u0 = " << cfg.u0_mode << "\n";
  out << "consistency_flux = " << (cfg.consistency_flux ? "on" : "off") << "\n";
  if (!cfg.mortar_overrides.empty()) {
    out << "mortar =";
    for (const auto& [g, s] : cfg.mortar_overrides) out << " " << g << ":" << s;
    out << "\n";
  }
  out << "s = " << cfg.s << "\n";
  for (const auto& [idx, sc] : cfg.subdomain_overrides) {
    out << "[subdomain " << idx << "]\n";
    if (sc.nx > 0) out << "nx = " << sc.nx << "\n";
    if (sc.ny > 0) out << "ny = " << sc.ny << "\n";
    if (sc.degree > 0) out << "degree = " << sc.degree << "\n";
    if (sc.alpha > 0.0) out << "alpha = " << sc.alpha << "\n";
  }
  return out.str();
}

/// FNV-1a hash of the canonical form, as a 16-digit hex string.
inline std::string config_hash(const RunConfig& cfg) {
  const std::string text = canonical_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

} // namespace mortarfem
