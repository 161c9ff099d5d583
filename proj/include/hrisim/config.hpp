// SPDX-License-Identifier: Apache-2.0
//
// Flat key-value configuration files. Lines look like `key = value`, `#`
// starts a comment, unknown keys are rejected, and every omitted key keeps
// its default. Units are encoded in the key names (dB, dBm, meters); values
// convert to the shared linear scales at load time.

#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <string>

#include "hrisim/sweep.hpp"

namespace hrisim {

struct SimConfig {
  SystemConfig system;
  Geometry geometry;
  FadingSpec fading;
  SweepSpec sweep;
  RunOptions run;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline double parse_double(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size())
    throw std::invalid_argument("config key '" + key + "': bad number '" + value + "'");
  return d;
}

inline long long parse_int(const std::string& key, const std::string& value) {
  const double d = parse_double(key, value);
  const auto i = static_cast<long long>(d);
  if (static_cast<double>(i) != d)
    throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + value +
                                "'");
  return i;
}

// Seeds use the full 64-bit range, so they skip the double path.
inline std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  char* end = nullptr;
  const unsigned long long u = std::strtoull(v.c_str(), &end, 10);
  if (v.empty() || v[0] == '-' || end != v.c_str() + v.size())
    throw std::invalid_argument("config key '" + key + "': bad unsigned integer '" + value + "'");
  return u;
}

inline bool parse_bool(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw std::invalid_argument("config key '" + key + "': bad boolean '" + value + "'");
}

// Splits on commas and/or whitespace.
inline std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : value) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

inline std::vector<double> parse_doubles(const std::string& key, const std::string& value,
                                         std::size_t expected = 0) {
  std::vector<double> out;
  for (const std::string& tok : split_list(value)) out.push_back(parse_double(key, tok));
  if (expected != 0 && out.size() != expected)
    throw std::invalid_argument("config key '" + key + "': expected " +
                                std::to_string(expected) + " numbers, got " +
                                std::to_string(out.size()));
  return out;
}

inline Vec3 parse_vec3(const std::string& key, const std::string& value) {
  const std::vector<double> v = parse_doubles(key, value, 3);
  return {v[0], v[1], v[2]};
}

}  // namespace detail

// Applies one `key = value` setting. Shared by the file loader and the CLI's
// --set overrides.
inline void apply_config_key(SimConfig& c, const std::string& key, const std::string& value) {
  using detail::parse_bool;
  using detail::parse_double;
  using detail::parse_doubles;
  using detail::parse_int;
  using detail::parse_vec3;

  if (key == "m") c.system.bs_antennas = static_cast<int>(parse_int(key, value));
  else if (key == "n") c.system.ris_elements = static_cast<int>(parse_int(key, value));
  else if (key == "l") c.system.active_elements = static_cast<int>(parse_int(key, value));
  else if (key == "eta_db") c.system.eta = db_to_amp(parse_double(key, value));
  else if (key == "p_t_dbm") c.system.tx_power = dbm_to_mw(parse_double(key, value));
  else if (key == "p_ris_max_dbm") c.system.ris_power_max = dbm_to_mw(parse_double(key, value));
  else if (key == "sigma2_dbm") c.system.noise_var = dbm_to_mw(parse_double(key, value));
  else if (key == "nu2_dbm") c.system.ris_noise_var = dbm_to_mw(parse_double(key, value));
  else if (key == "max_iter") c.system.max_iter = static_cast<int>(parse_int(key, value));
  else if (key == "conv_tol") c.system.conv_tol = parse_double(key, value);
  else if (key == "bs_position") c.geometry.bs = parse_vec3(key, value);
  else if (key == "ris_position") c.geometry.ris = parse_vec3(key, value);
  else if (key == "ue_corner") c.geometry.ue_corner = parse_vec3(key, value);
  else if (key == "ue_extent") {
    const std::vector<double> v = parse_doubles(key, value, 2);
    c.geometry.ue_extent_x = v[0];
    c.geometry.ue_extent_y = v[1];
  } else if (key == "rho_bu") c.fading.rho_bu = parse_double(key, value);
  else if (key == "rho_br") c.fading.rho_br = parse_double(key, value);
  else if (key == "rho_ru") c.fading.rho_ru = parse_double(key, value);
  else if (key == "pathloss_intercept_db") c.fading.pathloss_intercept_db = parse_double(key, value);
  else if (key == "pathloss_decade_db") c.fading.pathloss_decade_db = parse_double(key, value);
  else if (key == "sweep_variable") c.sweep.variable = variable_from_string(detail::trim(value));
  else if (key == "sweep_values") c.sweep.values = parse_doubles(key, value);
  else if (key == "trials") c.sweep.trials = static_cast<int>(parse_int(key, value));
  else if (key == "seed") c.sweep.root_seed = detail::parse_u64(key, value);
  else if (key == "methods") {
    c.sweep.methods.clear();
    for (const std::string& tok : detail::split_list(value))
      c.sweep.methods.push_back(method_from_string(tok));
  } else if (key == "tie_rho_links") c.sweep.tie_rho_links = parse_bool(key, value);
  else if (key == "arbitrary_placements")
    c.run.arbitrary_placements = static_cast<int>(parse_int(key, value));
  else if (key == "threads") c.run.threads = static_cast<unsigned>(parse_int(key, value));
  else if (key == "oracle_max_n") c.run.oracle.max_n = static_cast<int>(parse_int(key, value));
  else if (key == "oracle_cap") c.run.oracle.placement_cap = detail::parse_u64(key, value);
  else
    throw std::invalid_argument("unknown config key: '" + key + "'");
}

inline void validate_config(const SimConfig& c) {
  c.system.validate();
  c.geometry.validate();
  c.fading.validate();
  c.sweep.validate(c.system);
  if (c.run.arbitrary_placements < 1)
    throw std::invalid_argument("config: arbitrary_placements must be >= 1");
  if (c.run.oracle.max_n < 1) throw std::invalid_argument("config: oracle_max_n must be >= 1");
}

inline SimConfig parse_config(std::istream& in) {
  SimConfig c;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const std::size_t eq = body.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = detail::trim(body.substr(0, eq));
    const std::string value = detail::trim(body.substr(eq + 1));
    apply_config_key(c, key, value);
  }
  validate_config(c);
  return c;
}

inline SimConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse_config(in);
}

}  // namespace hrisim
