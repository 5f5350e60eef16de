#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "geometry.hpp"
#include "link_budget.hpp"

namespace vlcsec {

enum class Method { SDR, ZF, MRT, AN_SDR, AN_MRT };

const char* method_name(Method m);
std::vector<Method> parse_methods(const std::string& spec);

// Full experiment description. Defaults follow the reference simulation
// parameter set; everything is overridable through `section.key = value`
// config lines or vlcsec_scenario_set.
struct ScenarioConfig {
  VlcFrontEnd vlc;
  RfModel rf;
  EnergyHarvestParams harvest;

  double ap_height = 3.0;         // m
  double user_height = 0.85;      // m
  double user_disk_radius = 2.0;  // m
  double d_d = 5.0;               // destination distance from disk center, m
  double d_e = 4.0;               // eavesdropper distance (known CSI), m
  double d_e_min = -1.0;          // eavesdropper ring (unknown CSI); <0: use d_e

  double r_th = 2.0;    // relay QoS, bits/s/Hz
  double r_th_d = 1.0;  // destination QoS (unknown CSI), bits/s/Hz
  double eta = 0.8;     // RF/VLC bandwidth ratio

  int trials = 300;
  std::uint64_t seed = 1;
  std::vector<Method> methods{Method::SDR};

  int expectation_samples = 500;
  bool clamp_per_draw = true;        // per-draw clamping of the RF expectation
  bool printed_power_rows = false;   // AN power rows exactly as printed
  bool emit_rf_rows = false;         // add "<method>-rf" rows to the table

  double bisection_tol = 1e-4;
  int bisection_max_iters = 40;
  int randomization_samples = 256;
  int oracle_grid = 64;
  int oracle_instances = 50;

  std::string sweep_variable;        // d_d | d_e | d_e_min | r_th | r_th_d
  std::vector<double> sweep_values;

  SceneParams scene() const;
  double eav_ring() const { return d_e_min > 0.0 ? d_e_min : d_e; }
  VlcSystemConstants constants() const { return make_constants(vlc, rf, eta); }

  void validate() const;
  void set(const std::string& key, const std::string& value);
  std::string get(const std::string& key) const;
  std::vector<std::string> keys() const;

  static ScenarioConfig from_file(const std::string& path);
  static ScenarioConfig from_string(const std::string& text);
};

// Applies one value of the configured sweep variable.
ScenarioConfig with_sweep_value(const ScenarioConfig& cfg, double value);

}  // namespace vlcsec
