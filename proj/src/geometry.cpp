#include "geometry.hpp"

#include <cmath>

namespace vlcsec {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kSpeedOfLight = 299792458.0;  // m/s

double deg2rad(double d) { return d * kPi / 180.0; }
}  // namespace

double distance(const Position3D& a, const Position3D& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double VlcFrontEnd::lambertian_order() const {
  return -1.0 / std::log2(std::cos(deg2rad(half_power_semiangle)));
}

void VlcFrontEnd::validate() const {
  if (!(pd_area > 0.0)) throw ConfigError("vlc: pd_area must be > 0");
  if (!(half_power_semiangle > 0.0 && half_power_semiangle < 90.0))
    throw ConfigError("vlc: half_power_semiangle must be in (0, 90) deg");
  if (!(fov_semiangle > 0.0 && fov_semiangle <= 90.0))
    throw ConfigError("vlc: fov_semiangle must be in (0, 90] deg");
  if (!(refractive_index >= 1.0))
    throw ConfigError("vlc: refractive_index must be >= 1");
  if (!(max_current > 0.0)) throw ConfigError("vlc: max_current must be > 0");
  if (!(noise_psd > 0.0) || !(bandwidth > 0.0))
    throw ConfigError("vlc: noise_psd and bandwidth must be > 0");
  if (!(oe_factor > 0.0) || !(eo_factor > 0.0))
    throw ConfigError("vlc: conversion factors must be > 0");
  if (!(lambertian_order() > 0.0))
    throw ConfigError("vlc: derived Lambertian order must be > 0");
}

void RfModel::validate() const {
  if (!(carrier > 0.0) || !(bandwidth > 0.0))
    throw ConfigError("rf: carrier and bandwidth must be > 0");
  if (!(breakpoint > 0.0)) throw ConfigError("rf: breakpoint must be > 0");
  if (shadow_sigma_before < 0.0 || shadow_sigma_after < 0.0)
    throw ConfigError("rf: shadow sigmas must be >= 0");
  if (rician_k < 0.0) throw ConfigError("rf: rician_k must be >= 0");
}

double lambertian_gain(const Position3D& ap, const Position3D& user,
                       const VlcFrontEnd& fe) {
  if (!(ap.z > user.z))
    throw ConfigError("lambertian_gain: AP must be above the user");
  const double d = distance(ap, user);
  // LED points down, PD points up: radiance and incidence angles coincide.
  const double cos_theta = (ap.z - user.z) / d;
  const double theta = std::acos(std::min(1.0, cos_theta));
  const double fov = deg2rad(fe.fov_semiangle);
  if (theta > fov) return 0.0;
  const double m = fe.lambertian_order();
  const double sin_fov = std::sin(fov);
  const double concentrator =
      fe.refractive_index * fe.refractive_index / (sin_fov * sin_fov);
  return (m + 1.0) * fe.pd_area / (2.0 * kPi * d * d) *
         std::pow(cos_theta, m) * fe.optical_filter_gain * concentrator *
         cos_theta;
}

double rf_path_loss_db(double d, const RfModel& m) {
  if (!(d > 0.0)) throw ConfigError("rf_path_loss_db: d must be > 0");
  const auto free_space = [&](double r) {
    return 20.0 * std::log10(4.0 * kPi * r * m.carrier / kSpeedOfLight);
  };
  if (d <= m.breakpoint) return free_space(d);
  return free_space(m.breakpoint) +
         m.post_breakpoint_slope * std::log10(d / m.breakpoint);
}

std::complex<double> sample_rf_channel(const Position3D& tx,
                                       const Position3D& rx, const RfModel& m,
                                       RngStream& rng) {
  const double d = distance(tx, rx);
  if (!(d > 0.0)) throw ConfigError("sample_rf_channel: tx == rx");

  const std::complex<double> scatter = rng.cnormal();
  const double shadow_draw = rng.normal();

  double los_amp, scatter_amp;
  if (std::isinf(m.rician_k)) {
    los_amp = 1.0;
    scatter_amp = 0.0;
  } else {
    los_amp = std::sqrt(m.rician_k / (m.rician_k + 1.0));
    scatter_amp = std::sqrt(1.0 / (m.rician_k + 1.0));
  }
  const double phase =
      2.0 * kPi * d * m.carrier / kSpeedOfLight + deg2rad(m.los_angle);
  const std::complex<double> fade =
      los_amp * std::complex<double>(std::cos(phase), std::sin(phase)) +
      scatter_amp * scatter;

  const double sigma =
      d <= m.breakpoint ? m.shadow_sigma_before : m.shadow_sigma_after;
  const double loss_db = rf_path_loss_db(d, m) + sigma * shadow_draw;
  return fade * std::pow(10.0, -loss_db / 20.0);
}

ScenarioDraw sample_scenario_draw(const SceneParams& scene,
                                  const VlcFrontEnd& fe, const RfModel& rf,
                                  RngStream& rng) {
  ScenarioDraw out;

  auto draw_in_disk = [&]() {
    const double r = scene.user_disk_radius * std::sqrt(rng.uniform01());
    const double a = rng.uniform(0.0, 2.0 * kPi);
    return Position3D{r * std::cos(a), r * std::sin(a), scene.user_height};
  };
  Position3D ua = draw_in_disk();
  Position3D ub = draw_in_disk();
  double ha = lambertian_gain(scene.ap, ua, fe);
  double hb = lambertian_gain(scene.ap, ub, fe);
  if (hb > ha) {
    std::swap(ua, ub);
    std::swap(ha, hb);
  }
  out.user1 = ua;
  out.user2 = ub;
  out.ch.h1 = ha;
  out.ch.h2 = hb;

  auto on_ring = [&](double dist) {
    const double a = rng.uniform(0.0, 2.0 * kPi);
    return Position3D{dist * std::cos(a), dist * std::sin(a),
                      scene.user_height};
  };
  out.dest = on_ring(scene.dest_distance);
  out.eav = on_ring(scene.eav_distance);

  out.ch.hD(0) = sample_rf_channel(out.user1, out.dest, rf, rng);
  out.ch.hD(1) = sample_rf_channel(out.user2, out.dest, rf, rng);
  out.ch.hE(0) = sample_rf_channel(out.user1, out.eav, rf, rng);
  out.ch.hE(1) = sample_rf_channel(out.user2, out.eav, rf, rng);
  return out;
}

}  // namespace vlcsec
