#include "known_csi.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace vlcsec {

namespace {

double conv_gain(const VlcSystemConstants& k, const VlcFrontEnd& fe,
                 double h) {
  return k.c_const * fe.oe_factor * fe.oe_factor * fe.eo_factor *
         fe.eo_factor * h * h;
}

// P_D needed so that both relays can decode the destination message at the
// bandwidth-scaled target rate.
double pd_lower_bound(const ChannelSet& ch, double target_rate, double eta,
                      double p1, double p2, const VlcSystemConstants& k,
                      const VlcFrontEnd& fe) {
  const double f = std::exp2(eta * target_rate) - 1.0;
  double out = 0.0;
  for (double h : {ch.h1, ch.h2}) {
    const double c = conv_gain(k, fe, h);
    out = std::max(out, f * (k.sigma_v_sq + c * (p1 + p2)) / c);
  }
  return out;
}

struct InnerEval {
  double b = 0.0;
  double pr1 = 0.0, pr2 = 0.0;
  BeamformerSolution beam;
  double rs_rf = 0.0;
  RateBundle rates;
  double min_rud = 0.0;
  SdpStatus status = SdpStatus::optimal;
};

}  // namespace

std::pair<double, double> optimal_message_powers(const ChannelSet& ch,
                                                 double r_th,
                                                 const VlcSystemConstants& k,
                                                 const VlcFrontEnd& fe) {
  if (!(ch.h2 > 0.0))
    throw InfeasibleError("optimal_message_powers: weak relay gain is zero");
  const double f = std::exp2(2.0 * r_th) - 1.0;
  const double c1 = conv_gain(k, fe, ch.h1);
  const double c2 = conv_gain(k, fe, ch.h2);
  const double p1 = k.sigma_v_sq * f / c1;
  const double p2 = f * (k.sigma_v_sq + c2 * p1) / c2;
  return {p1, p2};
}

double dc_bias_from_powers(double p1, double p2, double pd,
                           const VlcFrontEnd& fe) {
  const double b = fe.max_current - std::sqrt(p1) - std::sqrt(p2) -
                   std::sqrt(pd);
  if (b < fe.max_current / 2.0 - 1e-9 * fe.max_current)
    throw InfeasibleError(
        "dc_bias_from_powers: QoS powers exceed the bias headroom");
  return b;
}

BeamformerSolution zf_beamformer(const ChannelSet& ch, double pr1,
                                 double pr2) {
  BeamformerSolution sol;
  const double e1 = std::abs(ch.hE(0));
  const double e2 = std::abs(ch.hE(1));
  if (e1 == 0.0 && e2 == 0.0) {
    // no eavesdropper channel to null: full-power MRT toward the destination
    sol.degenerate = true;
    for (int i = 0; i < 2; ++i) {
      const double pr = i == 0 ? pr1 : pr2;
      const double a = std::abs(ch.hD(i));
      sol.w(i) = a > 0.0 ? std::sqrt(pr) * ch.hD(i) / a
                         : std::complex<double>(std::sqrt(pr), 0.0);
    }
    return sol;
  }
  sol.a = std::min(std::sqrt(pr1) / e2, std::sqrt(pr2) / e1);
  sol.w(0) = sol.a * std::conj(ch.hE(1));
  sol.w(1) = -sol.a * std::conj(ch.hE(0));
  return sol;
}

SdrBeamResult sdr_secrecy_beamformer(const ChannelSet& ch, double pr1,
                                     double pr2, const VlcSystemConstants& k,
                                     int randomization_samples,
                                     RngStream& rng) {
  const Eigen::Matrix2cd HD = ch.hD * ch.hD.adjoint();
  const Eigen::Matrix2cd HE = ch.hE * ch.hE.adjoint();
  SdpOutcome sdp = solve_secrecy_cc_sdp(HD, HE, pr1, pr2, k.sigma_rf_sq);
  if (!(sdp.scalar > 0.0))
    throw SolverError("sdr_secrecy_beamformer: degenerate Charnes-Cooper scale");
  const Eigen::Matrix2cd W = sdp.matrix / sdp.scalar;
  RankOneExtraction ext = extract_rank_one(W);

  // clip per-element overshoot from finite solver accuracy
  Eigen::Vector2cd w = ext.v;
  for (int i = 0; i < 2; ++i) {
    const double cap = std::sqrt(i == 0 ? pr1 : pr2);
    const double a = std::abs(w(i));
    if (a > cap) w(i) *= cap / a;
  }
  const auto ratio_of = [&](const Eigen::Vector2cd& v) {
    return secrecy_ratio(ch.hD, ch.hE, v, k.sigma_rf_sq);
  };
  if (ext.flagged) {
    const Eigen::Vector2d caps(pr1, pr2);
    const Eigen::Vector2cd wr =
        gaussian_randomization(W, caps, ratio_of, randomization_samples, rng);
    if (ratio_of(wr) > ratio_of(w)) w = wr;
  }

  SdrBeamResult out;
  out.beam.w = w;
  out.beam.rank_flagged = ext.flagged;
  out.beam.achieved_objective = ratio_of(w);
  out.relaxation_value = sdp.objective;
  out.status = sdp.status;
  return out;
}

namespace {

InnerEval evaluate_at_pd(const ChannelSet& ch, const KnownCsiConfig& cfg,
                         const VlcFrontEnd& fe, const VlcSystemConstants& k,
                         const EnergyHarvestParams& eh, double p1, double p2,
                         double pd, RngStream& rng) {
  InnerEval ev;
  ev.b = dc_bias_from_powers(p1, p2, pd, fe);
  ev.pr1 = harvested_power(ch.h1, ev.b, eh, fe);
  ev.pr2 = harvested_power(ch.h2, ev.b, eh, fe);

  if (cfg.method == KnownCsiMethod::ZF) {
    ev.beam = zf_beamformer(ch, ev.pr1, ev.pr2);
    ev.beam.achieved_objective =
        secrecy_ratio(ch.hD, ch.hE, ev.beam.w, k.sigma_rf_sq);
  } else {
    SdrBeamResult res = sdr_secrecy_beamformer(
        ch, ev.pr1, ev.pr2, k, cfg.randomization_samples, rng);
    ev.beam = res.beam;
    ev.status = res.status;
  }

  ev.rs_rf = rf_secrecy_rate(ev.beam.w, ch, k);
  PowerAllocation pa{p1, p2, pd, ev.b};
  ev.rates = noma_rates(pa, ch, k, fe);
  ev.min_rud = std::min(ev.rates.r_u1_to_d, ev.rates.r_u2_to_d);
  return ev;
}

}  // namespace

KnownCsiSolution solve_known_csi(const ChannelSet& ch,
                                 const KnownCsiConfig& cfg,
                                 const VlcFrontEnd& fe,
                                 const VlcSystemConstants& k,
                                 const EnergyHarvestParams& eh,
                                 RngStream& rng) {
  if (cfg.max_iters < 1)
    throw ConfigError("solve_known_csi: max_iters must be >= 1");
  const auto [p1, p2] = optimal_message_powers(ch, cfg.r_th, k, fe);
  const double headroom =
      fe.max_current / 2.0 - std::sqrt(p1) - std::sqrt(p2);
  if (headroom < 0.0)
    throw InfeasibleError("solve_known_csi: relay QoS exceeds the headroom");

  const double pd_hi = headroom * headroom;
  InnerEval ev = evaluate_at_pd(ch, cfg, fe, k, eh, p1, p2, pd_hi, rng);
  const double rs0 = ev.rs_rf;
  double pd_lo =
      std::min(pd_lower_bound(ch, rs0, cfg.eta, p1, p2, k, fe), pd_hi);

  KnownCsiSolution sol;
  sol.pd_lo = pd_lo;
  sol.pd_hi = pd_hi;

  double lo = pd_lo, hi = pd_hi;
  double pd = pd_hi;
  std::vector<std::pair<double, double>> trace;  // (pd, predicate)
  for (int it = 0; it < cfg.max_iters; ++it) {
    pd = 0.5 * (lo + hi);
    ev = evaluate_at_pd(ch, cfg, fe, k, eh, p1, p2, pd, rng);
    sol.iterations = it + 1;
    const double g = cfg.eta * ev.rs_rf - ev.min_rud;
    trace.emplace_back(pd, g);
    if (std::abs(g) <= cfg.bisection_tol) break;
    if (g < 0.0)
      hi = pd;
    else
      lo = pd;
    if (hi - lo <= 1e-14 * std::max(1.0, pd_hi)) {
      pd = 0.5 * (lo + hi);
      ev = evaluate_at_pd(ch, cfg, fe, k, eh, p1, p2, pd, rng);
      break;
    }
  }

  // the predicate should be non-increasing in pd; count observed inversions
  std::sort(trace.begin(), trace.end());
  for (size_t i = 1; i < trace.size(); ++i)
    if (trace[i].second > trace[i - 1].second + 1e-6)
      ++sol.monotonicity_violations;

  sol.pa = PowerAllocation{p1, p2, pd, ev.b};
  sol.beam = ev.beam;
  sol.rates = ev.rates;
  sol.inner_status = ev.status;
  sol.secrecy_rate_rf = ev.rs_rf;
  // end-to-end rate is capped by the VLC hop; the cap makes the coupling
  // constraint exact whenever the hop is the binding side
  sol.secrecy_rate = std::min(ev.rs_rf, ev.min_rud / cfg.eta);
  sol.residual = std::abs(cfg.eta * sol.secrecy_rate - ev.min_rud);
  return sol;
}

}  // namespace vlcsec
