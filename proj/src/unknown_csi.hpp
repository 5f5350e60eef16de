#pragma once

#include <functional>

#include "link_budget.hpp"
#include "sdp.hpp"

namespace vlcsec {

enum class UnknownCsiMethod { BASELINE_MRT, AN_SDR, AN_MRT };

struct UnknownCsiConfig {
  double r_th = 2.0;    // relay QoS, bits/s/Hz
  double r_th_d = 1.0;  // destination QoS, bits/s/Hz
  double eta = 0.8;
  UnknownCsiMethod method = UnknownCsiMethod::AN_SDR;
  double eav_distance_min = 4.0;  // D_E,min: ring used by the harness sampler
  int expectation_samples = 500;
  bool clamp_per_draw = true;  // false: signed draws, clamp after averaging
  bool printed_power_rows = false;
  int randomization_samples = 256;
};

struct UnknownCsiSolution {
  PowerAllocation pa;
  BeamformerSolution beam;
  double avg_secrecy_rate = 0.0;  // filled in by expected_secrecy_rate
  double dest_rate = 0.0;         // RF rate delivered to the destination
  RateBundle rates;
  double hop_bound = 0.0;  // min_i R_{ui->D} / eta
  bool degenerate = false; // AN power SDP was infeasible, beta forced to 0
};

// Closed-form minimum P_D so both relays can decode the destination
// message at the bandwidth-scaled destination QoS.
double pd_star_unknown(const ChannelSet& ch, double r_th_d, double eta,
                       double p1, double p2, const VlcSystemConstants& k,
                       const VlcFrontEnd& fe);

// All harvested power beamformed at the destination, no jamming.
UnknownCsiSolution baseline_mrt_plan(const ChannelSet& ch,
                                     const UnknownCsiConfig& cfg,
                                     const VlcFrontEnd& fe,
                                     const VlcSystemConstants& k,
                                     const EnergyHarvestParams& eh);

// Minimum-power beam meeting the destination QoS via the relaxed SDP; the
// rest of the per-relay budget drives the destination-nulled jamming vector.
UnknownCsiSolution an_sdr_plan(const ChannelSet& ch,
                               const UnknownCsiConfig& cfg,
                               const VlcFrontEnd& fe,
                               const VlcSystemConstants& k,
                               const EnergyHarvestParams& eh, RngStream& rng);

// Same split but with the beam direction pinned to h_D; the jamming scale
// comes from a bisection with a closed-form feasibility test.
UnknownCsiSolution an_mrt_plan(const ChannelSet& ch,
                               const UnknownCsiConfig& cfg,
                               const VlcFrontEnd& fe,
                               const VlcSystemConstants& k,
                               const EnergyHarvestParams& eh);

using EavSampler = std::function<Eigen::Vector2cd(RngStream&)>;

struct ExpectedRateParts {
  double mean_rf = 0.0;    // Monte-Carlo mean of the RF secrecy expression
  double hop_bound = 0.0;  // min_i R_{ui->D} / eta
  double combined = 0.0;   // min of the two
};

// Monte-Carlo mean of the per-draw RF secrecy expression over fresh
// eavesdropper channels, combined with the VLC hop bound. With
// clamp_per_draw each draw is floored at zero before averaging; otherwise
// the signed mean is returned (the harness floors the aggregate).
ExpectedRateParts expected_secrecy_parts(const UnknownCsiSolution& sol,
                                         const ChannelSet& ch_dest_fixed,
                                         const EavSampler& eav_sampler, int n,
                                         RngStream& rng,
                                         const VlcSystemConstants& k,
                                         bool clamp_per_draw = true);

double expected_secrecy_rate(const UnknownCsiSolution& sol,
                             const ChannelSet& ch_dest_fixed,
                             const EavSampler& eav_sampler, int n,
                             RngStream& rng, const VlcSystemConstants& k,
                             bool clamp_per_draw = true);

}  // namespace vlcsec
