#include "scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace vlcsec {

const char* method_name(Method m) {
  switch (m) {
    case Method::SDR: return "sdr";
    case Method::ZF: return "zf";
    case Method::MRT: return "mrt";
    case Method::AN_SDR: return "an-sdr";
    case Method::AN_MRT: return "an-mrt";
  }
  return "?";
}

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad numeric value for " + key + ": '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad integer value for " + key + ": '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("bad seed value for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError("bad boolean value for " + key + ": '" + v + "'");
}

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::vector<Method> parse_methods(const std::string& spec) {
  std::vector<Method> out;
  for (const std::string& tok : split(spec, ',')) {
    if (tok.empty()) continue;
    if (tok == "all") {
      return {Method::SDR, Method::ZF, Method::MRT, Method::AN_SDR,
              Method::AN_MRT};
    } else if (tok == "sdr") {
      out.push_back(Method::SDR);
    } else if (tok == "zf") {
      out.push_back(Method::ZF);
    } else if (tok == "mrt") {
      out.push_back(Method::MRT);
    } else if (tok == "an-sdr") {
      out.push_back(Method::AN_SDR);
    } else if (tok == "an-mrt") {
      out.push_back(Method::AN_MRT);
    } else {
      throw ConfigError("unknown method '" + tok +
                        "' (expected sdr|zf|mrt|an-sdr|an-mrt|all)");
    }
  }
  if (out.empty()) throw ConfigError("method list is empty");
  // canonical order with duplicates removed keeps output deterministic
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SceneParams ScenarioConfig::scene() const {
  SceneParams s;
  s.ap = Position3D{0.0, 0.0, ap_height};
  s.user_height = user_height;
  s.user_disk_radius = user_disk_radius;
  s.dest_distance = d_d;
  s.eav_distance = d_e;
  return s;
}

void ScenarioConfig::validate() const {
  vlc.validate();
  rf.validate();
  harvest.validate();
  if (!(ap_height > user_height))
    throw ConfigError("geometry: ap_height must exceed user_height");
  if (!(user_disk_radius > 0.0))
    throw ConfigError("geometry: user_disk_radius must be > 0");
  if (!(d_d > 0.0) || !(d_e > 0.0))
    throw ConfigError("geometry: distances must be > 0");
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("qos: eta must be in (0,1]");
  if (r_th < 0.0 || r_th_d < 0.0)
    throw ConfigError("qos: rate thresholds must be >= 0");
  if (trials < 1) throw ConfigError("run: trials must be >= 1");
  if (expectation_samples < 1)
    throw ConfigError("run: expectation_samples must be >= 1");
  if (!(bisection_tol > 0.0))
    throw ConfigError("solver: bisection_tol must be > 0");
  if (bisection_max_iters < 1)
    throw ConfigError("solver: bisection_max_iters must be >= 1");
  if (oracle_grid < 64) throw ConfigError("solver: oracle_grid must be >= 64");
  if (methods.empty()) throw ConfigError("run: method list is empty");
  if (!sweep_variable.empty()) {
    if (sweep_variable != "d_d" && sweep_variable != "d_e" &&
        sweep_variable != "d_e_min" && sweep_variable != "r_th" &&
        sweep_variable != "r_th_d")
      throw ConfigError("sweep: unknown variable '" + sweep_variable + "'");
    if (sweep_values.empty()) throw ConfigError("sweep: values are empty");
    for (size_t i = 1; i < sweep_values.size(); ++i)
      if (!(sweep_values[i] > sweep_values[i - 1]))
        throw ConfigError("sweep: values must be strictly increasing");
  }
}

namespace {

struct KeyEntry {
  const char* name;
  std::function<void(ScenarioConfig&, const std::string&)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

#define NUM_KEY(name, field)                                              \
  KeyEntry{name,                                                          \
           [](ScenarioConfig& c, const std::string& v) {                  \
             c.field = parse_double(name, v);                             \
           },                                                             \
           [](const ScenarioConfig& c) { return fmt_double(c.field); }}

#define INT_KEY(name, field)                                                \
  KeyEntry{name,                                                            \
           [](ScenarioConfig& c, const std::string& v) {                    \
             c.field = static_cast<int>(parse_int(name, v));                \
           },                                                               \
           [](const ScenarioConfig& c) { return std::to_string(c.field); }}

#define BOOL_KEY(name, field)                                     \
  KeyEntry{name,                                                  \
           [](ScenarioConfig& c, const std::string& v) {          \
             c.field = parse_bool(name, v);                       \
           },                                                     \
           [](const ScenarioConfig& c) {                          \
             return std::string(c.field ? "true" : "false");      \
           }}

const std::vector<KeyEntry>& key_table() {
  static const std::vector<KeyEntry> table = {
      NUM_KEY("vlc.pd_area", vlc.pd_area),
      NUM_KEY("vlc.half_power_semiangle", vlc.half_power_semiangle),
      NUM_KEY("vlc.optical_filter_gain", vlc.optical_filter_gain),
      NUM_KEY("vlc.refractive_index", vlc.refractive_index),
      NUM_KEY("vlc.fov_semiangle", vlc.fov_semiangle),
      NUM_KEY("vlc.oe_factor", vlc.oe_factor),
      NUM_KEY("vlc.eo_factor", vlc.eo_factor),
      NUM_KEY("vlc.noise_psd", vlc.noise_psd),
      NUM_KEY("vlc.bandwidth", vlc.bandwidth),
      NUM_KEY("vlc.max_current", vlc.max_current),
      NUM_KEY("rf.carrier", rf.carrier),
      NUM_KEY("rf.bandwidth", rf.bandwidth),
      NUM_KEY("rf.noise_psd_dbm_per_hz", rf.noise_psd_dbm_per_hz),
      NUM_KEY("rf.breakpoint", rf.breakpoint),
      NUM_KEY("rf.post_breakpoint_slope", rf.post_breakpoint_slope),
      NUM_KEY("rf.shadow_sigma_before", rf.shadow_sigma_before),
      NUM_KEY("rf.shadow_sigma_after", rf.shadow_sigma_after),
      NUM_KEY("rf.rician_k", rf.rician_k),
      NUM_KEY("rf.los_angle", rf.los_angle),
      NUM_KEY("harvest.fill_factor", harvest.fill_factor),
      NUM_KEY("harvest.thermal_voltage", harvest.thermal_voltage),
      NUM_KEY("harvest.dark_current", harvest.dark_current),
      NUM_KEY("geometry.ap_height", ap_height),
      NUM_KEY("geometry.user_height", user_height),
      NUM_KEY("geometry.user_disk_radius", user_disk_radius),
      NUM_KEY("geometry.d_d", d_d),
      NUM_KEY("geometry.d_e", d_e),
      NUM_KEY("geometry.d_e_min", d_e_min),
      NUM_KEY("qos.r_th", r_th),
      NUM_KEY("qos.r_th_d", r_th_d),
      NUM_KEY("qos.eta", eta),
      INT_KEY("run.trials", trials),
      KeyEntry{"run.seed",
               [](ScenarioConfig& c, const std::string& v) {
                 c.seed = parse_u64("run.seed", v);
               },
               [](const ScenarioConfig& c) { return std::to_string(c.seed); }},
      KeyEntry{"run.method",
               [](ScenarioConfig& c, const std::string& v) {
                 c.methods = parse_methods(v);
               },
               [](const ScenarioConfig& c) {
                 std::string s;
                 for (Method m : c.methods) {
                   if (!s.empty()) s += ",";
                   s += method_name(m);
                 }
                 return s;
               }},
      INT_KEY("run.expectation_samples", expectation_samples),
      KeyEntry{"run.clamp_mode",
               [](ScenarioConfig& c, const std::string& v) {
                 if (v == "per-draw") c.clamp_per_draw = true;
                 else if (v == "post-mean") c.clamp_per_draw = false;
                 else
                   throw ConfigError(
                       "run.clamp_mode must be per-draw or post-mean");
               },
               [](const ScenarioConfig& c) {
                 return std::string(c.clamp_per_draw ? "per-draw"
                                                     : "post-mean");
               }},
      KeyEntry{"run.an_power_rows",
               [](ScenarioConfig& c, const std::string& v) {
                 if (v == "nulling") c.printed_power_rows = false;
                 else if (v == "printed") c.printed_power_rows = true;
                 else
                   throw ConfigError(
                       "run.an_power_rows must be nulling or printed");
               },
               [](const ScenarioConfig& c) {
                 return std::string(c.printed_power_rows ? "printed"
                                                         : "nulling");
               }},
      BOOL_KEY("run.emit_rf_rows", emit_rf_rows),
      NUM_KEY("solver.bisection_tol", bisection_tol),
      INT_KEY("solver.bisection_max_iters", bisection_max_iters),
      INT_KEY("solver.randomization_samples", randomization_samples),
      INT_KEY("solver.oracle_grid", oracle_grid),
      INT_KEY("solver.oracle_instances", oracle_instances),
      KeyEntry{"sweep.variable",
               [](ScenarioConfig& c, const std::string& v) {
                 c.sweep_variable = v;
               },
               [](const ScenarioConfig& c) { return c.sweep_variable; }},
      KeyEntry{"sweep.values",
               [](ScenarioConfig& c, const std::string& v) {
                 c.sweep_values.clear();
                 for (const std::string& tok : split(v, ','))
                   if (!tok.empty())
                     c.sweep_values.push_back(
                         parse_double("sweep.values", tok));
               },
               [](const ScenarioConfig& c) {
                 std::string s;
                 for (double v : c.sweep_values) {
                   if (!s.empty()) s += ",";
                   s += fmt_double(v);
                 }
                 return s;
               }},
  };
  return table;
}

#undef NUM_KEY
#undef INT_KEY
#undef BOOL_KEY

}  // namespace

void ScenarioConfig::set(const std::string& key, const std::string& value) {
  for (const KeyEntry& e : key_table()) {
    if (key == e.name) {
      e.set(*this, trim(value));
      return;
    }
  }
  throw ConfigError("unknown config key '" + key + "'");
}

std::string ScenarioConfig::get(const std::string& key) const {
  for (const KeyEntry& e : key_table())
    if (key == e.name) return e.get(*this);
  throw ConfigError("unknown config key '" + key + "'");
}

std::vector<std::string> ScenarioConfig::keys() const {
  std::vector<std::string> out;
  for (const KeyEntry& e : key_table()) out.push_back(e.name);
  return out;
}

ScenarioConfig ScenarioConfig::from_string(const std::string& text) {
  ScenarioConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) +
                        ": expected key = value");
    try {
      cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    } catch (const ConfigError& e) {
      throw ConfigError("config line " + std::to_string(lineno) + ": " +
                        e.what());
    }
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig ScenarioConfig::from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return from_string(ss.str());
}

ScenarioConfig with_sweep_value(const ScenarioConfig& cfg, double value) {
  ScenarioConfig out = cfg;
  if (cfg.sweep_variable == "d_d") out.d_d = value;
  else if (cfg.sweep_variable == "d_e") out.d_e = value;
  else if (cfg.sweep_variable == "d_e_min") out.d_e_min = value;
  else if (cfg.sweep_variable == "r_th") out.r_th = value;
  else if (cfg.sweep_variable == "r_th_d") out.r_th_d = value;
  else
    throw ConfigError("with_sweep_value: no sweep variable configured");
  return out;
}

}  // namespace vlcsec
