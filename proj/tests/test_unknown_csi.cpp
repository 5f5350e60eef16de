#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "known_csi.hpp"
#include "unknown_csi.hpp"

using namespace vlcsec;
using Eigen::Vector2cd;

namespace {

const VlcFrontEnd kFe;
const RfModel kRf;
const EnergyHarvestParams kEh;
const VlcSystemConstants kK = make_constants(kFe, kRf, 0.8);

ChannelSet random_channels(RngStream& rng) {
  ChannelSet ch;
  ch.h1 = 1.2e-5 + 1.5e-5 * rng.uniform01();
  ch.h2 = 0.5e-5 + (ch.h1 - 0.5e-5) * rng.uniform01();
  const double ld = rng.uniform(50.0, 68.0) + 4.0 * rng.normal();
  const double le = rng.uniform(45.0, 68.0) + 4.0 * rng.normal();
  ch.hD = Vector2cd(rng.cnormal(), rng.cnormal()) * std::pow(10.0, -ld / 20.0);
  ch.hE = Vector2cd(rng.cnormal(), rng.cnormal()) * std::pow(10.0, -le / 20.0);
  return ch;
}

UnknownCsiConfig config(UnknownCsiMethod m, double r_th_d = 1.0) {
  UnknownCsiConfig cfg;
  cfg.method = m;
  cfg.r_th = 2.0;
  cfg.r_th_d = r_th_d;
  return cfg;
}

// largest destination QoS that keeps both the VLC side (bias headroom) and
// the RF side (harvested beam power) feasible
double max_reachable_rthd(const ChannelSet& ch, const UnknownCsiConfig& cfg) {
  const auto [p1, p2] = optimal_message_powers(ch, cfg.r_th, kK, kFe);
  const double head = kFe.max_current / 2.0 - std::sqrt(p1) - std::sqrt(p2);
  if (head <= 0.0) return 0.0;
  const double pd_max = head * head;

  const double conv = kK.c_const * kFe.oe_factor * kFe.oe_factor *
                      kFe.eo_factor * kFe.eo_factor;
  double f_max = std::numeric_limits<double>::infinity();
  for (double h : {ch.h1, ch.h2}) {
    const double c = conv * h * h;
    f_max = std::min(f_max, c * pd_max / (kK.sigma_v_sq + c * (p1 + p2)));
  }
  const double vlc_roof = std::log2(1.0 + f_max) / cfg.eta;

  // most conservative harvest: bias at its minimum I_H / 2
  const double pr1 = harvested_power(ch.h1, kFe.max_current / 2.0, kEh, kFe);
  const double pr2 = harvested_power(ch.h2, kFe.max_current / 2.0, kEh, kFe);
  const double full = std::pow(std::sqrt(pr1) * std::abs(ch.hD(0)) +
                                   std::sqrt(pr2) * std::abs(ch.hD(1)),
                               2.0);
  const double rf_roof = 0.5 * std::log2(1.0 + full / kK.sigma_rf_sq);
  return std::min(vlc_roof, rf_roof);
}

}  // namespace


TEST_CASE("pd star closed form") {
  ChannelSet ch;
  ch.h1 = ch.h2 = 2.066e-5;
  CHECK(pd_star_unknown(ch, 0.0, 0.8, 1e-4, 1e-3, kK, kFe) == 0.0);

  const auto [p1, p2] = optimal_message_powers(ch, 2.0, kK, kFe);
  CHECK(pd_star_unknown(ch, 2.0, 0.8, p1, p2, kK, kFe) ==
        doctest::Approx(0.014816119400650621).epsilon(1e-12));

  // equal gains make both inner arguments equal
  ChannelSet uneven = ch;
  uneven.h2 = 1.1e-5;
  const double a = pd_star_unknown(uneven, 1.0, 0.8, p1, p2, kK, kFe);
  ChannelSet only2 = uneven;
  only2.h1 = uneven.h2;
  CHECK(a == pd_star_unknown(only2, 1.0, 0.8, p1, p2, kK, kFe));
}

TEST_CASE("baseline plan uses all headroom and full power MRT") {
  RngStream rng(1);
  for (int i = 0; i < 50; ++i) {
    const ChannelSet ch = random_channels(rng);
    const UnknownCsiConfig cfg = config(UnknownCsiMethod::BASELINE_MRT);
    const UnknownCsiSolution sol =
        baseline_mrt_plan(ch, cfg, kFe, kK, kEh);

    CHECK(sol.pa.dc_bias == kFe.max_current / 2.0);
    CHECK(std::sqrt(sol.pa.p1) + std::sqrt(sol.pa.p2) +
              std::sqrt(sol.pa.pd) ==
          doctest::Approx(kFe.max_current / 2.0).epsilon(1e-12));

    const double pr1 = harvested_power(ch.h1, sol.pa.dc_bias, kEh, kFe);
    const double pr2 = harvested_power(ch.h2, sol.pa.dc_bias, kEh, kFe);
    CHECK(std::norm(sol.beam.w(0)) == doctest::Approx(pr1).epsilon(1e-12));
    CHECK(std::norm(sol.beam.w(1)) == doctest::Approx(pr2).epsilon(1e-12));
    CHECK(sol.beam.n_a.norm() == 0.0);
  }

  // real positive destination channel gives a real positive beam
  ChannelSet ch = random_channels(rng);
  ch.hD = Vector2cd(2e-4, 3e-4);
  const UnknownCsiSolution sol =
      baseline_mrt_plan(ch, config(UnknownCsiMethod::BASELINE_MRT), kFe, kK,
                        kEh);
  CHECK(sol.beam.w(0).imag() == 0.0);
  CHECK(sol.beam.w(1).imag() == 0.0);
  CHECK(sol.beam.w(0).real() > 0.0);
  CHECK(sol.beam.w(1).real() > 0.0);
}

TEST_CASE("artificial noise plans") {
  RngStream rng(7);
  int checked = 0;
  while (checked < 50) {
    const ChannelSet ch = random_channels(rng);
    UnknownCsiConfig cfg = config(UnknownCsiMethod::AN_SDR);
    const double roof = max_reachable_rthd(ch, cfg);
    if (roof < 0.3) continue;
    cfg.r_th_d = rng.uniform(0.1, 0.9) * std::min(roof, 2.0);

    RngStream ra(900 + checked);
    const UnknownCsiSolution sdr = an_sdr_plan(ch, cfg, kFe, kK, kEh, ra);
    cfg.method = UnknownCsiMethod::AN_MRT;
    const UnknownCsiSolution mrt = an_mrt_plan(ch, cfg, kFe, kK, kEh);
    ++checked;

    // both plans share the VLC-side allocation
    CHECK(sdr.pa.p1 == mrt.pa.p1);
    CHECK(sdr.pa.pd == mrt.pa.pd);
    CHECK(sdr.pa.dc_bias == mrt.pa.dc_bias);

    const double pr1 = harvested_power(ch.h1, sdr.pa.dc_bias, kEh, kFe);
    const double pr2 = harvested_power(ch.h2, sdr.pa.dc_bias, kEh, kFe);
    const double beta_cap = std::min(std::sqrt(pr1) / std::abs(ch.hD(1)),
                                     std::sqrt(pr2) / std::abs(ch.hD(0)));

    for (const UnknownCsiSolution* sol : {&sdr, &mrt}) {
      CHECK(!sol->degenerate);
      // jamming is invisible at the destination
      CHECK(std::abs(ch.hD.dot(sol->beam.n_a)) <=
            1e-12 * ch.hD.norm() * (sol->beam.n_a.norm() + 1e-300));
      // the destination QoS is met
      CHECK(sol->dest_rate >= cfg.r_th_d - 1e-6);
      // per-relay power split stays within the harvested budget
      CHECK(std::norm(sol->beam.w(0)) + std::norm(sol->beam.n_a(0)) <=
            pr1 * (1.0 + 1e-8));
      CHECK(std::norm(sol->beam.w(1)) + std::norm(sol->beam.n_a(1)) <=
            pr2 * (1.0 + 1e-8));
      // jamming-free destination rate: adding n_a to the denominator
      // changes nothing measurable
      const double with_na =
          0.5 * std::log2(1.0 + std::norm(ch.hD.dot(sol->beam.w)) /
                                    (kK.sigma_rf_sq +
                                     std::norm(ch.hD.dot(sol->beam.n_a))));
      CHECK(std::abs(with_na - sol->dest_rate) < 1e-9);
    }

    // the SDP never jams less than the pinned-direction solution
    CHECK(sdr.beam.beta >= mrt.beam.beta - 1e-6 * beta_cap);
    // and for two relays the pinned direction is actually optimal
    CHECK(sdr.beam.beta ==
          doctest::Approx(mrt.beam.beta).epsilon(1e-4).scale(beta_cap));

    // the VLC hop pins the rate budget at half the destination QoS
    CHECK(sdr.hop_bound ==
          doctest::Approx(cfg.r_th_d / 2.0).epsilon(1e-9));
  }
}

TEST_CASE("zero destination QoS equalizes the two jamming solutions") {
  RngStream rng(3);
  const ChannelSet ch = random_channels(rng);
  UnknownCsiConfig cfg = config(UnknownCsiMethod::AN_SDR, 0.0);
  RngStream ra(5);
  const UnknownCsiSolution sdr = an_sdr_plan(ch, cfg, kFe, kK, kEh, ra);
  cfg.method = UnknownCsiMethod::AN_MRT;
  const UnknownCsiSolution mrt = an_mrt_plan(ch, cfg, kFe, kK, kEh);
  CHECK(sdr.beam.beta ==
        doctest::Approx(mrt.beam.beta).epsilon(1e-6));
}

TEST_CASE("raising the destination QoS weakly lowers the jamming scale") {
  RngStream rng(11);
  int checked = 0;
  while (checked < 20) {
    const ChannelSet ch = random_channels(rng);
    UnknownCsiConfig lo = config(UnknownCsiMethod::AN_SDR);
    const double roof = max_reachable_rthd(ch, lo);
    if (roof < 0.5) continue;
    lo.r_th_d = 0.2 * std::min(roof, 2.0);
    UnknownCsiConfig hi = lo;
    hi.r_th_d = 0.7 * std::min(roof, 2.0);
    ++checked;

    RngStream r1(checked), r2(checked);
    const double beta_lo = an_sdr_plan(ch, lo, kFe, kK, kEh, r1).beam.beta;
    const double beta_hi = an_sdr_plan(ch, hi, kFe, kK, kEh, r2).beam.beta;
    CHECK(beta_hi <= beta_lo * (1.0 + 1e-9) + 1e-12);

    const double mrt_lo = an_mrt_plan(ch, lo, kFe, kK, kEh).beam.beta;
    const double mrt_hi = an_mrt_plan(ch, hi, kFe, kK, kEh).beam.beta;
    CHECK(mrt_hi <= mrt_lo * (1.0 + 1e-9) + 1e-12);
  }
}

TEST_CASE("unreachable destination QoS") {
  RngStream rng(13);
  // crush the destination channel so the RF hop is the binding side
  ChannelSet ch = random_channels(rng);
  ch.hD *= 1e-3;
  UnknownCsiConfig cfg = config(UnknownCsiMethod::AN_SDR, 0.5);
  REQUIRE(max_reachable_rthd(ch, cfg) < 0.5);

  RngStream ra(1);
  const UnknownCsiSolution sdr = an_sdr_plan(ch, cfg, kFe, kK, kEh, ra);
  CHECK(sdr.degenerate);
  CHECK(sdr.beam.beta == 0.0);
  CHECK(sdr.beam.n_a.norm() == 0.0);

  cfg.method = UnknownCsiMethod::AN_MRT;
  CHECK_THROWS_AS(an_mrt_plan(ch, cfg, kFe, kK, kEh), InfeasibleError);
}

TEST_CASE("expected secrecy rate") {
  RngStream rng(21);
  const ChannelSet ch = random_channels(rng);
  const UnknownCsiConfig cfg = config(UnknownCsiMethod::BASELINE_MRT);
  const UnknownCsiSolution sol =
      baseline_mrt_plan(ch, cfg, kFe, kK, kEh);

  SUBCASE("an eavesdropper on the destination channel erases the rate") {
    const EavSampler clone = [&](RngStream&) { return ch.hD; };
    RngStream r(3);
    CHECK(expected_secrecy_rate(sol, ch, clone, 100, r, kK) == 0.0);
  }

  SUBCASE("a silent eavesdropper leaves the destination term") {
    const EavSampler silent = [](RngStream&) {
      return Vector2cd(0.0, 0.0);
    };
    RngStream r(3);
    const ExpectedRateParts parts =
        expected_secrecy_parts(sol, ch, silent, 50, r, kK);
    CHECK(parts.mean_rf == doctest::Approx(sol.dest_rate).epsilon(1e-12));
    CHECK(parts.combined ==
          doctest::Approx(std::min(sol.hop_bound, sol.dest_rate))
              .epsilon(1e-12));
  }

  SUBCASE("sample means agree within Monte-Carlo error") {
    const RfModel rf = kRf;
    const EavSampler ring = [&](RngStream& r) {
      const double a = r.uniform(0.0, 6.283185307179586);
      const Position3D pos{4.0 * std::cos(a), 4.0 * std::sin(a), 0.85};
      return Vector2cd(sample_rf_channel({0.5, 0.0, 0.85}, pos, rf, r),
                       sample_rf_channel({-0.5, 0.0, 0.85}, pos, rf, r));
    };
    RngStream r1(9), r2(9), r3(10);
    const int n_small = 10000, n_big = 100000;
    const double m_small =
        expected_secrecy_rate(sol, ch, ring, n_small, r1, kK);
    const double m_big = expected_secrecy_rate(sol, ch, ring, n_big, r2, kK);

    // sample standard deviation of a fresh stream estimates the error bar
    double acc = 0.0, acc2 = 0.0;
    for (int i = 0; i < n_small; ++i) {
      const double v = expected_secrecy_rate(sol, ch, ring, 1, r3, kK);
      acc += v;
      acc2 += v * v;
    }
    const double mean = acc / n_small;
    const double sd = std::sqrt(acc2 / n_small - mean * mean);
    CHECK(std::abs(m_small - m_big) <= 3.0 * sd / std::sqrt(double(n_small)));
  }

  SUBCASE("per-draw clamping never reports less than the signed mean") {
    const RfModel rf = kRf;
    const EavSampler ring = [&](RngStream& r) {
      const double a = r.uniform(0.0, 6.283185307179586);
      const Position3D pos{2.0 * std::cos(a), 2.0 * std::sin(a), 0.85};
      return Vector2cd(sample_rf_channel({0.5, 0.0, 0.85}, pos, rf, r),
                       sample_rf_channel({-0.5, 0.0, 0.85}, pos, rf, r));
    };
    RngStream r1(4), r2(4);
    const double clamped =
        expected_secrecy_rate(sol, ch, ring, 2000, r1, kK, true);
    const double signed_mean =
        expected_secrecy_rate(sol, ch, ring, 2000, r2, kK, false);
    CHECK(clamped >= signed_mean);
    CHECK(clamped >= 0.0);
  }

  SUBCASE("deterministic given the seed") {
    const RfModel rf = kRf;
    const EavSampler ring = [&](RngStream& r) {
      const double a = r.uniform(0.0, 6.283185307179586);
      const Position3D pos{3.0 * std::cos(a), 3.0 * std::sin(a), 0.85};
      return Vector2cd(sample_rf_channel({0.5, 0.0, 0.85}, pos, rf, r),
                       sample_rf_channel({-0.5, 0.0, 0.85}, pos, rf, r));
    };
    RngStream r1(12), r2(12);
    CHECK(expected_secrecy_rate(sol, ch, ring, 500, r1, kK) ==
          expected_secrecy_rate(sol, ch, ring, 500, r2, kK));
  }
}
