#pragma once

#include <string>
#include <vector>

#include "geometry.hpp"

namespace vlcsec {

// VLC-side decision: peak electrical message powers (A^2) plus DC bias (A).
struct PowerAllocation {
  double p1 = 0.0;       // P_1, A^2
  double p2 = 0.0;       // P_2, A^2
  double pd = 0.0;       // P_D, A^2
  double dc_bias = 0.0;  // b, A
};

struct VlcSystemConstants {
  // High-SNR shaping constant; b >= I_H/2 pins it to 1/(2 pi e).
  double c_const = 0.058549831524319172;
  double eta = 0.8;            // RF-to-VLC bandwidth ratio
  double sigma_v_sq = 2e-14;   // N_v * B_v, A^2
  double sigma_rf_sq = 6.37e-14;  // W
};

VlcSystemConstants make_constants(const VlcFrontEnd& fe, const RfModel& rf,
                                  double eta);

struct EnergyHarvestParams {
  double fill_factor = 0.75;
  double thermal_voltage = 25e-3;  // V_t, V
  double dark_current = 1e-10;     // I_0, A
  void validate() const;
};

struct RateBundle {
  double r_u1 = 0.0;       // own message at the strong relay
  double r_u2 = 0.0;       // own message at the weak relay
  double r_u1_to_d = 0.0;  // destination message decoded at relay 1
  double r_u2_to_d = 0.0;  // destination message decoded at relay 2
};

// Per-relay NOMA decoding rates (bits/s/Hz on the VLC hop). Relays decode
// the destination message first, then their own after cancellation.
RateBundle noma_rates(const PowerAllocation& pa, const ChannelSet& ch,
                      const VlcSystemConstants& k, const VlcFrontEnd& fe);

// Harvested electrical power (W) at a relay with VLC gain h and DC bias b.
double harvested_power(double h, double b, const EnergyHarvestParams& eh,
                       const VlcFrontEnd& fe);

// Wiretap secrecy rate of the RF hop for beam w, clamped at zero.
double rf_secrecy_rate(const Eigen::Vector2cd& w, const ChannelSet& ch,
                       const VlcSystemConstants& k);

struct AnRates {
  double dest_rate = 0.0;
  double eav_rate = 0.0;
};

// Destination and eavesdropper rates when a jamming vector n_a (orthogonal
// to h_D) rides along with the beam.
AnRates an_rf_secrecy_terms(const Eigen::Vector2cd& w,
                            const Eigen::Vector2cd& n_a, const ChannelSet& ch,
                            const VlcSystemConstants& k);

struct FeasibilityConfig {
  double r_th = 0.0;        // bits/s/Hz
  double max_current = 0.6; // I_H, A
  double rel_tol = 1e-8;
};

struct FeasibilityReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Evaluates the VLC-side constraints (power budget, bias window, relay QoS)
// with a relative tolerance and reports every violated constraint by name.
FeasibilityReport check_feasibility(const PowerAllocation& pa,
                                    const RateBundle& rates,
                                    const FeasibilityConfig& cfg);

}  // namespace vlcsec
