#pragma once

#include <cstdint>

#include "link_budget.hpp"
#include "sdp.hpp"

namespace vlcsec {

enum class KnownCsiMethod { SDR, ZF };

struct KnownCsiConfig {
  double r_th = 2.0;  // relay QoS, bits/s/Hz
  double eta = 0.8;
  KnownCsiMethod method = KnownCsiMethod::SDR;
  double bisection_tol = 1e-4;  // epsilon, bits/s/Hz
  int max_iters = 40;
  int randomization_samples = 256;
};

struct KnownCsiSolution {
  PowerAllocation pa;
  BeamformerSolution beam;
  // end-to-end secrecy rate per RF hertz: min(R_s, min_i R_{ui->D} / eta)
  double secrecy_rate = 0.0;
  double secrecy_rate_rf = 0.0;  // uncapped RF-hop secrecy of the beam
  RateBundle rates;
  int iterations = 0;
  double pd_lo = 0.0;  // bisection interval actually used
  double pd_hi = 0.0;
  double residual = 0.0;  // |eta R_s - min R_{ui->D}| at the returned point
  SdpStatus inner_status = SdpStatus::optimal;
  int monotonicity_violations = 0;
};

// Minimum message powers meeting the relay QoS with equality.
// Throws InfeasibleError when h2 <= 0.
std::pair<double, double> optimal_message_powers(const ChannelSet& ch,
                                                 double r_th,
                                                 const VlcSystemConstants& k,
                                                 const VlcFrontEnd& fe);

// Largest bias under the amplitude budget: b = I_H - sum of amplitudes.
// Throws InfeasibleError when the result drops below I_H / 2.
double dc_bias_from_powers(double p1, double p2, double pd,
                           const VlcFrontEnd& fe);

// Null-space beamformer w = a (h_{E,2}^*, -h_{E,1}^*) with the largest
// scale under the per-relay power caps. Falls back to full-power MRT
// (flagged) when hE vanishes.
BeamformerSolution zf_beamformer(const ChannelSet& ch, double pr1, double pr2);

struct SdrBeamResult {
  BeamformerSolution beam;
  double relaxation_value = 0.0;  // SDP upper bound on the secrecy ratio
  SdpStatus status = SdpStatus::optimal;
};

// Charnes-Cooper SDR solve plus rank-one extraction (randomization when
// the relaxed solution is not numerically rank one). achieved_objective is
// the secrecy ratio of the extracted beam.
SdrBeamResult sdr_secrecy_beamformer(const ChannelSet& ch, double pr1,
                                     double pr2, const VlcSystemConstants& k,
                                     int randomization_samples,
                                     RngStream& rng);

// Joint P1, P2, b, P_D, w solution: closed-form message powers, then
// bisection on P_D with an SDR or ZF inner beamformer solve per iterate.
KnownCsiSolution solve_known_csi(const ChannelSet& ch,
                                 const KnownCsiConfig& cfg,
                                 const VlcFrontEnd& fe,
                                 const VlcSystemConstants& k,
                                 const EnergyHarvestParams& eh,
                                 RngStream& rng);

}  // namespace vlcsec
