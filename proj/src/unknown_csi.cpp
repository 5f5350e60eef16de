#include "unknown_csi.hpp"

#include <cmath>

#include "known_csi.hpp"

namespace vlcsec {

namespace {

double conv_gain(const VlcSystemConstants& k, const VlcFrontEnd& fe,
                 double h) {
  return k.c_const * fe.oe_factor * fe.oe_factor * fe.eo_factor *
         fe.eo_factor * h * h;
}

Eigen::Vector2cd nulling_vector(const Eigen::Vector2cd& hD, double beta) {
  // orthogonal to h_D in the Hermitian inner product: h_D^H n_a = 0
  return beta * Eigen::Vector2cd(std::conj(hD(1)), -std::conj(hD(0)));
}

Eigen::Vector2cd mrt_full_power(const Eigen::Vector2cd& hD, double pr1,
                                double pr2) {
  Eigen::Vector2cd w;
  for (int i = 0; i < 2; ++i) {
    const double pr = i == 0 ? pr1 : pr2;
    const double a = std::abs(hD(i));
    w(i) = a > 0.0 ? std::sqrt(pr) * hD(i) / a
                   : std::complex<double>(std::sqrt(pr), 0.0);
  }
  return w;
}

struct PlanBase {
  double p1, p2, pd, b;
  double pr1, pr2;
};

// Common VLC-side allocation of the artificial-noise plans: minimum
// message powers, minimum P_D for the destination QoS, remaining headroom
// into the bias.
PlanBase an_plan_base(const ChannelSet& ch, const UnknownCsiConfig& cfg,
                      const VlcFrontEnd& fe, const VlcSystemConstants& k,
                      const EnergyHarvestParams& eh) {
  PlanBase out{};
  std::tie(out.p1, out.p2) = optimal_message_powers(ch, cfg.r_th, k, fe);
  out.pd = pd_star_unknown(ch, cfg.r_th_d, cfg.eta, out.p1, out.p2, k, fe);
  out.b = dc_bias_from_powers(out.p1, out.p2, out.pd, fe);
  out.pr1 = harvested_power(ch.h1, out.b, eh, fe);
  out.pr2 = harvested_power(ch.h2, out.b, eh, fe);
  return out;
}

void finish_solution(UnknownCsiSolution& sol, const ChannelSet& ch,
                     const UnknownCsiConfig& cfg, const VlcFrontEnd& fe,
                     const VlcSystemConstants& k) {
  sol.rates = noma_rates(sol.pa, ch, k, fe);
  sol.hop_bound =
      std::min(sol.rates.r_u1_to_d, sol.rates.r_u2_to_d) / cfg.eta;
  sol.dest_rate =
      0.5 * std::log2(1.0 + std::norm(ch.hD.dot(sol.beam.w)) / k.sigma_rf_sq);
}

}  // namespace

double pd_star_unknown(const ChannelSet& ch, double r_th_d, double eta,
                       double p1, double p2, const VlcSystemConstants& k,
                       const VlcFrontEnd& fe) {
  const double f = std::exp2(eta * r_th_d) - 1.0;
  double out = 0.0;
  for (double h : {ch.h1, ch.h2}) {
    const double c = conv_gain(k, fe, h);
    out = std::max(out, f * (k.sigma_v_sq + c * (p1 + p2)) / c);
  }
  return out;
}

UnknownCsiSolution baseline_mrt_plan(const ChannelSet& ch,
                                     const UnknownCsiConfig& cfg,
                                     const VlcFrontEnd& fe,
                                     const VlcSystemConstants& k,
                                     const EnergyHarvestParams& eh) {
  UnknownCsiSolution sol;
  const auto [p1, p2] = optimal_message_powers(ch, cfg.r_th, k, fe);
  const double headroom =
      fe.max_current / 2.0 - std::sqrt(p1) - std::sqrt(p2);
  if (headroom < 0.0)
    throw InfeasibleError("baseline_mrt_plan: relay QoS exceeds the headroom");
  const double b = fe.max_current / 2.0;
  sol.pa = PowerAllocation{p1, p2, headroom * headroom, b};
  const double pr1 = harvested_power(ch.h1, b, eh, fe);
  const double pr2 = harvested_power(ch.h2, b, eh, fe);
  sol.beam.w = mrt_full_power(ch.hD, pr1, pr2);
  finish_solution(sol, ch, cfg, fe, k);
  return sol;
}

UnknownCsiSolution an_sdr_plan(const ChannelSet& ch,
                               const UnknownCsiConfig& cfg,
                               const VlcFrontEnd& fe,
                               const VlcSystemConstants& k,
                               const EnergyHarvestParams& eh,
                               RngStream& rng) {
  UnknownCsiSolution sol;
  const PlanBase base = an_plan_base(ch, cfg, fe, k, eh);
  sol.pa = PowerAllocation{base.p1, base.p2, base.pd, base.b};

  const Eigen::Matrix2cd HD = ch.hD * ch.hD.adjoint();
  AnSdpOptions opt;
  opt.printed_power_rows = cfg.printed_power_rows;
  SdpOutcome sdp = solve_an_power_sdp(HD, ch.hD, base.pr1, base.pr2,
                                      cfg.r_th_d, k.sigma_rf_sq, opt);
  if (sdp.status == SdpStatus::infeasible) {
    // destination QoS unreachable even with all power on the beam
    sol.degenerate = true;
    sol.beam.w = mrt_full_power(ch.hD, base.pr1, base.pr2);
    sol.beam.beta = 0.0;
    finish_solution(sol, ch, cfg, fe, k);
    return sol;
  }

  const double beta = sdp.scalar;
  const double g1 = cfg.printed_power_rows ? std::norm(ch.hD(0))
                                           : std::norm(ch.hD(1));
  const double g2 = std::norm(ch.hD(0));
  const Eigen::Vector2d caps(std::max(0.0, base.pr1 - beta * beta * g1),
                             std::max(0.0, base.pr2 - beta * beta * g2));

  const double req = k.sigma_rf_sq * (std::exp2(2.0 * cfg.r_th_d) - 1.0);
  const auto dest_power = [&](const Eigen::Vector2cd& v) {
    return std::norm(ch.hD.dot(v));
  };

  RankOneExtraction ext = extract_rank_one(sdp.matrix);
  Eigen::Vector2cd w = ext.v;
  for (int i = 0; i < 2; ++i) {  // clip solver overshoot
    const double cap = std::sqrt(caps(i));
    const double a = std::abs(w(i));
    if (a > cap) w(i) *= cap / a;
  }
  if (ext.flagged || dest_power(w) < req * (1.0 - 1e-9)) {
    const auto qos_dest = [&](const Eigen::Vector2cd& v) {
      const double p = dest_power(v);
      return p >= req * (1.0 - 1e-9) ? p : -1.0;
    };
    const Eigen::Vector2cd wr = gaussian_randomization(
        sdp.matrix, caps, qos_dest, cfg.randomization_samples, rng);
    if (qos_dest(wr) > qos_dest(w)) w = wr;
    if (dest_power(w) < req * (1.0 - 1e-9))
      w = mrt_full_power(ch.hD, caps(0), caps(1));
  }

  sol.beam.w = w;
  sol.beam.beta = beta;
  sol.beam.n_a = nulling_vector(ch.hD, beta);
  sol.beam.rank_flagged = ext.flagged;
  sol.beam.achieved_objective = beta;
  finish_solution(sol, ch, cfg, fe, k);
  return sol;
}

UnknownCsiSolution an_mrt_plan(const ChannelSet& ch,
                               const UnknownCsiConfig& cfg,
                               const VlcFrontEnd& fe,
                               const VlcSystemConstants& k,
                               const EnergyHarvestParams& eh) {
  UnknownCsiSolution sol;
  const PlanBase base = an_plan_base(ch, cfg, fe, k, eh);
  sol.pa = PowerAllocation{base.p1, base.p2, base.pd, base.b};

  const double h1 = std::norm(ch.hD(0));
  const double h2 = std::norm(ch.hD(1));
  if (!(h1 > 0.0) || !(h2 > 0.0))
    throw InfeasibleError("an_mrt_plan: destination channel has a null entry");
  const double need = std::sqrt(k.sigma_rf_sq) *
                      std::sqrt(std::exp2(2.0 * cfg.r_th_d) - 1.0);

  // alpha_i at full residual power for a given jamming scale
  const auto alphas = [&](double beta) {
    const double a1 =
        std::sqrt(std::max(0.0, base.pr1 - beta * beta * h2) / h1);
    const double a2 =
        std::sqrt(std::max(0.0, base.pr2 - beta * beta * h1) / h2);
    return std::pair{a1, a2};
  };
  const auto feasible = [&](double beta) {
    const auto [a1, a2] = alphas(beta);
    return a1 * h1 + a2 * h2 >= need;
  };

  if (!feasible(0.0))
    throw InfeasibleError("an_mrt_plan: destination QoS unreachable");

  double lo = 0.0;
  double hi = std::min(std::sqrt(base.pr1 / h2), std::sqrt(base.pr2 / h1));
  if (feasible(hi)) {
    lo = hi;
  } else {
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      (feasible(mid) ? lo : hi) = mid;
    }
  }
  const double beta = lo;
  const auto [a1, a2] = alphas(beta);

  sol.beam.beta = beta;
  sol.beam.alpha1 = a1;
  sol.beam.alpha2 = a2;
  sol.beam.w = Eigen::Vector2cd(a1 * ch.hD(0), a2 * ch.hD(1));
  sol.beam.n_a = nulling_vector(ch.hD, beta);
  sol.beam.achieved_objective = beta;
  finish_solution(sol, ch, cfg, fe, k);
  return sol;
}

ExpectedRateParts expected_secrecy_parts(const UnknownCsiSolution& sol,
                                         const ChannelSet& ch_dest_fixed,
                                         const EavSampler& eav_sampler, int n,
                                         RngStream& rng,
                                         const VlcSystemConstants& k,
                                         bool clamp_per_draw) {
  if (n < 1) throw ConfigError("expected_secrecy_rate: n must be >= 1");
  const double dest_term =
      0.5 * std::log2(1.0 + std::norm(ch_dest_fixed.hD.dot(sol.beam.w)) /
                                k.sigma_rf_sq);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const Eigen::Vector2cd hE = eav_sampler(rng);
    const double eav_term =
        0.5 *
        std::log2(1.0 + std::norm(hE.dot(sol.beam.w)) /
                            (k.sigma_rf_sq + std::norm(hE.dot(sol.beam.n_a))));
    double v = dest_term - eav_term;
    if (clamp_per_draw) v = std::max(0.0, v);
    acc += v;
  }
  ExpectedRateParts parts;
  parts.mean_rf = acc / n;
  parts.hop_bound = sol.hop_bound;
  parts.combined = std::min(parts.hop_bound, parts.mean_rf);
  return parts;
}

double expected_secrecy_rate(const UnknownCsiSolution& sol,
                             const ChannelSet& ch_dest_fixed,
                             const EavSampler& eav_sampler, int n,
                             RngStream& rng, const VlcSystemConstants& k,
                             bool clamp_per_draw) {
  return expected_secrecy_parts(sol, ch_dest_fixed, eav_sampler, n, rng, k,
                                clamp_per_draw)
      .combined;
}

}  // namespace vlcsec
