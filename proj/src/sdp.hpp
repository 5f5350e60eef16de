#pragma once

#include <Eigen/Dense>
#include <functional>

#include "errors.hpp"
#include "rng.hpp"

namespace vlcsec {

enum class SdpStatus { optimal, near_rank_one, infeasible };

// Result of one relaxed SDP solve. `matrix` is S for the secrecy-ratio
// problem (scalar = mu of the Charnes-Cooper transform) and W for the
// artificial-noise problem (scalar = beta). duality_gap is the
// complementarity gap normalized by max(1, |objective|).
struct SdpOutcome {
  Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Zero();
  double scalar = 0.0;
  SdpStatus status = SdpStatus::optimal;
  double duality_gap = 0.0;
  double objective = 0.0;   // secrecy ratio (>= 1) or beta (>= 0)
  double rank_ratio = 0.0;  // lambda2 / lambda1 of `matrix`
  int iterations = 0;
};

struct BeamformerSolution {
  Eigen::Vector2cd w{0.0, 0.0};
  Eigen::Vector2cd n_a{0.0, 0.0};
  double a = 0.0;       // ZF scale
  double beta = 0.0;    // jamming scale
  double alpha1 = 0.0;  // AN-MRT beam scales
  double alpha2 = 0.0;
  double achieved_objective = 0.0;
  bool degenerate = false;  // fell back (no eavesdropper / infeasible QoS)
  bool rank_flagged = false;
};

struct RankOneExtraction {
  Eigen::Vector2cd v{0.0, 0.0};
  double rank_ratio = 0.0;
  bool flagged = false;
};

// Secrecy ratio (sigma^2 + |hD^H w|^2) / (sigma^2 + |hE^H w|^2); the
// homogenized objective of the Charnes-Cooper SDP equals this at optimum.
double secrecy_ratio(const Eigen::Vector2cd& hD, const Eigen::Vector2cd& hE,
                     const Eigen::Vector2cd& w, double sigma_rf_sq);

// Maximize mu*sigma^2 + tr(S H_D) s.t. mu*sigma^2 + tr(S H_E) = 1,
// tr(S E_i) <= mu * pr_i, S PSD, mu >= 0 (rank constraint dropped).
// Solved by a primal-dual interior-point iteration on the 4x4 real
// symmetric embedding of the complex 2x2 problem.
SdpOutcome solve_secrecy_cc_sdp(const Eigen::Matrix2cd& HD,
                                const Eigen::Matrix2cd& HE, double pr1,
                                double pr2, double sigma_rf_sq);

struct AnSdpOptions {
  // Power rows as printed pair beta^2 with |h_{D,1}|^2 in both rows;
  // default pairs each row with the opposite element, consistent with the
  // nulling construction n_a = beta * (h_{D,2}^*, -h_{D,1}^*).
  bool printed_power_rows = false;
};

// Maximize beta s.t. tr(W E_i) + beta^2 g_i <= pr_i,
// tr(W H_D) >= sigma^2 (2^(2 rth_d) - 1), W PSD.
SdpOutcome solve_an_power_sdp(const Eigen::Matrix2cd& HD,
                              const Eigen::Vector2cd& hD, double pr1,
                              double pr2, double rth_d, double sigma_rf_sq,
                              const AnSdpOptions& opt = {});

// Dominant-eigenpair extraction sqrt(lambda_max) * u_max; flags when the
// solution is not numerically rank one (lambda2/lambda1 > 1e-6).
RankOneExtraction extract_rank_one(const Eigen::Matrix2cd& S);

// Draws candidates from CN(0, S), scales each to the tightest per-element
// power cap, returns the best under `evaluate`. The plain eigenvector
// candidate is always included, so the result is never worse than
// extract_rank_one after the same scaling.
Eigen::Vector2cd gaussian_randomization(
    const Eigen::Matrix2cd& S, const Eigen::Vector2d& power_caps,
    const std::function<double(const Eigen::Vector2cd&)>& evaluate,
    int n_samples, RngStream& rng);

// Exhaustive-grid verification oracle for the secrecy-ratio problem.
// Searches w = (r1, r2 e^{j delta}) with the global phase fixed, then
// runs golden-section refinement passes around the best grid point.
BeamformerSolution brute_force_oracle(const Eigen::Vector2cd& hD,
                                      const Eigen::Vector2cd& hE, double pr1,
                                      double pr2, double sigma_rf_sq,
                                      int grid_density = 64);

}  // namespace vlcsec
