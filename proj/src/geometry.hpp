#pragma once

#include <Eigen/Dense>
#include <complex>

#include "errors.hpp"
#include "rng.hpp"

namespace vlcsec {

struct Position3D {
  double x = 0.0;  // m
  double y = 0.0;  // m
  double z = 0.0;  // m
};

double distance(const Position3D& a, const Position3D& b);

// Optical front end of the VLC downlink (LED pointing straight down,
// photodetector pointing straight up).
struct VlcFrontEnd {
  double pd_area = 1e-4;              // A_p, m^2
  double half_power_semiangle = 60.0; // theta_1/2, degrees
  double optical_filter_gain = 1.0;   // g_of
  double refractive_index = 1.5;      // n
  double fov_semiangle = 60.0;        // Theta, degrees
  double oe_factor = 0.53;            // rho, A/W
  double eo_factor = 10.0;            // nu, W/A
  double noise_psd = 1e-21;           // N_v, A^2/Hz
  double bandwidth = 20e6;            // B_v, Hz
  double max_current = 0.6;           // I_H, A

  double lambertian_order() const;
  double noise_variance() const { return noise_psd * bandwidth; }  // A^2
  void validate() const;
};

// Indoor RF link model: dual-slope path loss (free space up to the
// breakpoint), log-normal shadowing with a per-regime sigma, Rician fading
// with a distance-deterministic LoS phase.
struct RfModel {
  double carrier = 2.4e9;                  // Hz
  double bandwidth = 16e6;                 // Hz
  double noise_psd_dbm_per_hz = -174.0;    // dBm/Hz
  double breakpoint = 5.0;                 // d_BP, m
  double post_breakpoint_slope = 35.0;     // dB/decade
  double shadow_sigma_before = 3.0;        // dB
  double shadow_sigma_after = 5.0;         // dB
  double rician_k = 1.0;                   // K factor
  double los_angle = 45.0;                 // degrees

  double noise_power() const {  // sigma_RF^2, W
    return std::pow(10.0, (noise_psd_dbm_per_hz - 30.0) / 10.0) * bandwidth;
  }
  void validate() const;
};

// One channel realization. Entrusted users are labeled so h1 >= h2.
struct ChannelSet {
  double h1 = 0.0;
  double h2 = 0.0;
  Eigen::Vector2cd hD{0.0, 0.0};
  Eigen::Vector2cd hE{0.0, 0.0};
};

// Placement parameters for one Monte-Carlo scene.
struct SceneParams {
  Position3D ap{0.0, 0.0, 3.0};
  double user_height = 0.85;     // m
  double user_disk_radius = 2.0; // m
  double dest_distance = 5.0;    // D_D, m (horizontal, from disk center)
  double eav_distance = 4.0;     // D_E, m
};

// Channel realization plus the geometry it came from; the harness reuses
// the relay positions when redrawing eavesdropper channels.
struct ScenarioDraw {
  ChannelSet ch;
  Position3D user1, user2;  // relabeled: user1 is the VLC-stronger relay
  Position3D dest, eav;
};

// Eq.-(1)/(2) Lambertian LoS gain; 0 when the incidence angle exceeds the FoV.
double lambertian_gain(const Position3D& ap, const Position3D& user,
                       const VlcFrontEnd& fe);

// Deterministic dual-slope path loss in dB (no shadowing).
double rf_path_loss_db(double d, const RfModel& m);

// One complex channel draw: Rician fade times 10^(-(L+X_shadow)/20).
std::complex<double> sample_rf_channel(const Position3D& tx,
                                       const Position3D& rx, const RfModel& m,
                                       RngStream& rng);

ScenarioDraw sample_scenario_draw(const SceneParams& scene,
                                  const VlcFrontEnd& fe, const RfModel& rf,
                                  RngStream& rng);

inline ChannelSet sample_scenario(const SceneParams& scene,
                                  const VlcFrontEnd& fe, const RfModel& rf,
                                  RngStream& rng) {
  return sample_scenario_draw(scene, fe, rf, rng).ch;
}

}  // namespace vlcsec
