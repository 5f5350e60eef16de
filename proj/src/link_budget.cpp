#include "link_budget.hpp"

#include <cmath>

namespace vlcsec {

namespace {
double half_log2_1p(double x) { return 0.5 * std::log2(1.0 + x); }

double sq_abs(const std::complex<double>& z) { return std::norm(z); }

double beam_gain(const Eigen::Vector2cd& h, const Eigen::Vector2cd& w) {
  return sq_abs(h.dot(w));  // Eigen dot conjugates the left operand: h^H w
}
}  // namespace

VlcSystemConstants make_constants(const VlcFrontEnd& fe, const RfModel& rf,
                                  double eta) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw ConfigError("eta must be in (0, 1]");
  VlcSystemConstants k;
  k.eta = eta;
  k.sigma_v_sq = fe.noise_variance();
  k.sigma_rf_sq = rf.noise_power();
  return k;
}

void EnergyHarvestParams::validate() const {
  if (!(fill_factor > 0.0 && fill_factor <= 1.0))
    throw ConfigError("harvest: fill_factor must be in (0, 1]");
  if (!(thermal_voltage > 0.0))
    throw ConfigError("harvest: thermal_voltage must be > 0");
  if (!(dark_current > 0.0))
    throw ConfigError("harvest: dark_current must be > 0");
}

RateBundle noma_rates(const PowerAllocation& pa, const ChannelSet& ch,
                      const VlcSystemConstants& k, const VlcFrontEnd& fe) {
  const double conv = k.c_const * fe.oe_factor * fe.oe_factor * fe.eo_factor *
                      fe.eo_factor;
  const double c1 = conv * ch.h1 * ch.h1;
  const double c2 = conv * ch.h2 * ch.h2;
  const double sv = k.sigma_v_sq;

  RateBundle r;
  r.r_u1 = half_log2_1p(c1 * pa.p1 / sv);
  r.r_u2 = half_log2_1p(c2 * pa.p2 / (sv + c2 * pa.p1));
  r.r_u1_to_d = half_log2_1p(c1 * pa.pd / (sv + c1 * (pa.p1 + pa.p2)));
  r.r_u2_to_d = half_log2_1p(c2 * pa.pd / (sv + c2 * (pa.p1 + pa.p2)));
  return r;
}

double harvested_power(double h, double b, const EnergyHarvestParams& eh,
                       const VlcFrontEnd& fe) {
  const double i_dc = fe.oe_factor * fe.eo_factor * h * b;
  return eh.fill_factor * i_dc * eh.thermal_voltage *
         std::log1p(i_dc / eh.dark_current);
}

double rf_secrecy_rate(const Eigen::Vector2cd& w, const ChannelSet& ch,
                       const VlcSystemConstants& k) {
  const double dest = half_log2_1p(beam_gain(ch.hD, w) / k.sigma_rf_sq);
  const double eav = half_log2_1p(beam_gain(ch.hE, w) / k.sigma_rf_sq);
  return std::max(0.0, dest - eav);
}

AnRates an_rf_secrecy_terms(const Eigen::Vector2cd& w,
                            const Eigen::Vector2cd& n_a, const ChannelSet& ch,
                            const VlcSystemConstants& k) {
  AnRates out;
  out.dest_rate = half_log2_1p(beam_gain(ch.hD, w) / k.sigma_rf_sq);
  out.eav_rate = half_log2_1p(beam_gain(ch.hE, w) /
                              (k.sigma_rf_sq + beam_gain(ch.hE, n_a)));
  return out;
}

FeasibilityReport check_feasibility(const PowerAllocation& pa,
                                    const RateBundle& rates,
                                    const FeasibilityConfig& cfg) {
  FeasibilityReport rep;
  const double tol = cfg.rel_tol;
  // lhs <= rhs within a tolerance relative to the larger magnitude in play
  auto leq = [&](double lhs, double rhs) {
    const double scale =
        std::max({1.0, std::abs(lhs), std::abs(rhs)});
    return lhs <= rhs + tol * scale;
  };

  if (!leq(0.0, pa.p1)) rep.violations.push_back("p1_nonnegative");
  if (!leq(0.0, pa.p2)) rep.violations.push_back("p2_nonnegative");
  if (!leq(0.0, pa.pd)) rep.violations.push_back("pd_nonnegative");

  const double amp_sum = std::sqrt(std::max(0.0, pa.p1)) +
                         std::sqrt(std::max(0.0, pa.p2)) +
                         std::sqrt(std::max(0.0, pa.pd));
  if (!leq(amp_sum, cfg.max_current - pa.dc_bias))
    rep.violations.push_back("amplitude_budget");
  if (!leq(cfg.max_current / 2.0, pa.dc_bias))
    rep.violations.push_back("dc_bias_lower_bound");
  if (!leq(pa.dc_bias, cfg.max_current))
    rep.violations.push_back("dc_bias_upper_bound");
  if (!leq(cfg.r_th, rates.r_u1)) rep.violations.push_back("qos_u1");
  if (!leq(cfg.r_th, rates.r_u2)) rep.violations.push_back("qos_u2");
  return rep;
}

}  // namespace vlcsec
