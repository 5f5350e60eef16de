#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "known_csi.hpp"

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
  ch.h2 = 0.4e-5 + (ch.h1 - 0.4e-5) * rng.uniform01();
  const double ld = rng.uniform(50.0, 70.0) + 5.0 * rng.normal();
  const double le = rng.uniform(45.0, 70.0) + 5.0 * rng.normal();
  ch.hD = Vector2cd(rng.cnormal(), rng.cnormal()) * std::pow(10.0, -ld / 20.0);
  ch.hE = Vector2cd(rng.cnormal(), rng.cnormal()) * std::pow(10.0, -le / 20.0);
  return ch;
}

KnownCsiConfig config(KnownCsiMethod m, double r_th = 2.0) {
  KnownCsiConfig cfg;
  cfg.method = m;
  cfg.r_th = r_th;
  return cfg;
}

}  // namespace

TEST_CASE("optimal message powers match the closed forms") {
  ChannelSet ch;
  ch.h1 = ch.h2 = 2.066e-5;
  const auto [p1, p2] = optimal_message_powers(ch, 2.0, kK, kFe);
  CHECK(p1 == doctest::Approx(0.000427349530742829).epsilon(1e-12));
  CHECK(p2 == doctest::Approx(0.006837592491885264).epsilon(1e-12));
  // four significant digits as commonly quoted
  CHECK(p1 == doctest::Approx(4.274e-4).epsilon(5e-4));
  CHECK(p2 == doctest::Approx(6.84e-3).epsilon(5e-3));
}

TEST_CASE("zero threshold needs zero power") {
  ChannelSet ch;
  ch.h1 = 2e-5;
  ch.h2 = 1e-5;
  const auto [p1, p2] = optimal_message_powers(ch, 0.0, kK, kFe);
  CHECK(p1 == 0.0);
  CHECK(p2 == 0.0);
}

TEST_CASE("closed forms match an independent evaluation route") {
  // reference arithmetic via expm1 in long double, a different path from
  // the implementation's exp2
  RngStream rng(6);
  for (int i = 0; i < 100; ++i) {
    ChannelSet ch;
    ch.h1 = 1e-5 + 2e-5 * rng.uniform01();
    ch.h2 = 0.3e-5 + (ch.h1 - 0.3e-5) * rng.uniform01();
    const double rth = 3.0 * rng.uniform01();
    const auto [p1, p2] = optimal_message_powers(ch, rth, kK, kFe);

    const long double f = expm1l(2.0L * rth * 0.693147180559945309417L);
    const long double conv = (long double)kK.c_const * kFe.oe_factor *
                             kFe.oe_factor * kFe.eo_factor * kFe.eo_factor;
    const long double c1 = conv * ch.h1 * ch.h1;
    const long double c2 = conv * ch.h2 * ch.h2;
    const long double p1_ref = (long double)kK.sigma_v_sq * f / c1;
    const long double p2_ref =
        f * ((long double)kK.sigma_v_sq + c2 * p1_ref) / c2;
    CHECK(p1 == doctest::Approx((double)p1_ref).epsilon(1e-12));
    CHECK(p2 == doctest::Approx((double)p2_ref).epsilon(1e-12));

    // bias follows as the leftover headroom
    const double pd = 1e-4 * rng.uniform01();
    if (std::sqrt(p1) + std::sqrt(p2) + std::sqrt(pd) <=
        kFe.max_current / 2.0) {
      const long double b_ref = (long double)kFe.max_current - sqrtl(p1) -
                                sqrtl(p2) - sqrtl(pd);
      CHECK(dc_bias_from_powers(p1, p2, pd, kFe) ==
            doctest::Approx((double)b_ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("dc bias from powers") {
  CHECK(dc_bias_from_powers(0.0, 0.0, 0.0, kFe) == 0.6);
  CHECK(dc_bias_from_powers(0.01, 0.01, 0.01, kFe) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK_THROWS_AS(dc_bias_from_powers(0.04, 0.04, 0.0225, kFe),
                  InfeasibleError);  // amplitudes sum to 0.35
}

TEST_CASE("zero-forcing beamformer") {
  RngStream rng(9);

  SUBCASE("construction nulls the eavesdropper") {
    ChannelSet ch;
    ch.hD = Vector2cd(1e-3, 2e-3);
    ch.hE = Vector2cd(1.0, 1.0);
    const BeamformerSolution zf = zf_beamformer(ch, 1e-5, 1e-5);
    CHECK(std::abs(ch.hE.dot(zf.w)) < 1e-15);
    CHECK(zf.w(0) == -zf.w(1));  // proportional to (1, -1) for hE = (1, 1)
  }

  SUBCASE("symmetric caps and gains") {
    ChannelSet ch;
    ch.hE = Vector2cd(std::polar(2e-3, 0.3), std::polar(2e-3, -1.2));
    const BeamformerSolution zf = zf_beamformer(ch, 4e-5, 4e-5);
    CHECK(zf.a == doctest::Approx(std::sqrt(4e-5) / 2e-3).epsilon(1e-12));
  }

  SUBCASE("nulling and scale over random instances") {
    for (int i = 0; i < 10000; ++i) {
      const ChannelSet ch = random_channels(rng);
      const double pr1 = std::pow(10.0, rng.uniform(-6.0, -4.0));
      const double pr2 = std::pow(10.0, rng.uniform(-6.0, -4.0));
      const BeamformerSolution zf = zf_beamformer(ch, pr1, pr2);
      CHECK(std::abs(ch.hE.dot(zf.w)) <=
            1e-12 * ch.hE.norm() * zf.w.norm());
      const double expect = std::min(std::sqrt(pr1) / std::abs(ch.hE(1)),
                                     std::sqrt(pr2) / std::abs(ch.hE(0)));
      CHECK(zf.a == expect);
      CHECK(std::norm(zf.w(0)) <= pr1 * (1.0 + 1e-12));
      CHECK(std::norm(zf.w(1)) <= pr2 * (1.0 + 1e-12));
    }
  }

  SUBCASE("silent eavesdropper degenerates to flagged MRT") {
    ChannelSet ch;
    ch.hD = Vector2cd(std::polar(1e-3, 0.4), std::polar(5e-4, 2.0));
    ch.hE = Vector2cd(0.0, 0.0);
    const BeamformerSolution zf = zf_beamformer(ch, 1e-5, 2e-5);
    CHECK(zf.degenerate);
    CHECK(std::norm(zf.w(0)) == doctest::Approx(1e-5).epsilon(1e-12));
    CHECK(std::norm(zf.w(1)) == doctest::Approx(2e-5).epsilon(1e-12));
    CHECK(std::abs(ch.hD.dot(zf.w)) ==
          doctest::Approx(std::sqrt(1e-5) * 1e-3 + std::sqrt(2e-5) * 5e-4)
              .epsilon(1e-12));
  }
}

TEST_CASE("joint solve satisfies the coupling residual and the interval") {
  RngStream rng(2024);
  for (int i = 0; i < 40; ++i) {
    const ChannelSet ch = random_channels(rng);
    for (KnownCsiMethod m : {KnownCsiMethod::SDR, KnownCsiMethod::ZF}) {
      RngStream solver_rng(100 + i);
      const KnownCsiSolution sol =
          solve_known_csi(ch, config(m), kFe, kK, kEh, solver_rng);
      CHECK(sol.residual <= 1e-4);
      CHECK(sol.pa.pd >= sol.pd_lo * (1.0 - 1e-9) - 1e-18);
      CHECK(sol.pa.pd <= sol.pd_hi * (1.0 + 1e-9));
      CHECK(sol.secrecy_rate >= 0.0);

      // every converged solution passes the feasibility checker
      const RateBundle rates = noma_rates(sol.pa, ch, kK, kFe);
      const FeasibilityReport rep = check_feasibility(
          sol.pa, rates, FeasibilityConfig{2.0, kFe.max_current, 1e-8});
      CHECK(rep.ok());

      // beam power stays within the harvested budget
      const double pr1 = harvested_power(ch.h1, sol.pa.dc_bias, kEh, kFe);
      const double pr2 = harvested_power(ch.h2, sol.pa.dc_bias, kEh, kFe);
      CHECK(std::norm(sol.beam.w(0)) <= pr1 * (1.0 + 1e-8));
      CHECK(std::norm(sol.beam.w(1)) <= pr2 * (1.0 + 1e-8));
      if (m == KnownCsiMethod::ZF)
        CHECK(std::abs(ch.hE.dot(sol.beam.w)) <=
              1e-12 * ch.hE.norm() * sol.beam.w.norm() + 1e-300);
    }
  }
}

TEST_CASE("fixed point against a dense sweep over pd") {
  // with no eavesdropper the inner solve is exact MRT, so a plain scan of
  // the predicate over pd provides an independent root
  RngStream rng(77);
  for (int trial = 0; trial < 5; ++trial) {
    ChannelSet ch = random_channels(rng);
    ch.hE = Vector2cd(0.0, 0.0);

    KnownCsiConfig cfg = config(KnownCsiMethod::SDR);
    RngStream solver_rng(1);
    const KnownCsiSolution sol =
        solve_known_csi(ch, cfg, kFe, kK, kEh, solver_rng);
    CHECK(std::abs(cfg.eta * sol.secrecy_rate -
                   std::min(sol.rates.r_u1_to_d, sol.rates.r_u2_to_d)) <=
          cfg.bisection_tol);

    const auto [p1, p2] = optimal_message_powers(ch, cfg.r_th, kK, kFe);
    const auto predicate = [&](double pd) {
      const double b = kFe.max_current - std::sqrt(p1) - std::sqrt(p2) -
                       std::sqrt(pd);
      const double pr1 = harvested_power(ch.h1, b, kEh, kFe);
      const double pr2 = harvested_power(ch.h2, b, kEh, kFe);
      const double coherent =
          std::pow(std::sqrt(pr1) * std::abs(ch.hD(0)) +
                       std::sqrt(pr2) * std::abs(ch.hD(1)),
                   2.0);
      const double rs = 0.5 * std::log2(1.0 + coherent / kK.sigma_rf_sq);
      const PowerAllocation pa{p1, p2, pd, b};
      const RateBundle r = noma_rates(pa, ch, kK, kFe);
      return cfg.eta * rs - std::min(r.r_u1_to_d, r.r_u2_to_d);
    };

    const double hi = sol.pd_hi;
    const double lo = hi * 1e-9;
    if (predicate(lo) > 0.0 && predicate(hi) < 0.0) {
      double a = lo, b = hi;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (a + b);
        (predicate(mid) > 0.0 ? a : b) = mid;
      }
      const double pd_ref = 0.5 * (a + b);
      CHECK(sol.pa.pd == doctest::Approx(pd_ref).epsilon(5e-3));
    }
    // the predicate is monotone non-increasing across the interval
    double prev = predicate(lo);
    for (int s = 1; s <= 40; ++s) {
      const double x = lo + (hi - lo) * s / 40.0;
      const double g = predicate(x);
      CHECK(g <= prev + 1e-9);
      prev = g;
    }
  }
}

TEST_CASE("weaker eavesdropper never lowers the SDR rate") {
  // same fade with the ring pushed out by a doubling beyond the
  // breakpoint: |hE| shrinks by the slope, the optimum can only grow
  RngStream rng(31);
  for (int i = 0; i < 20; ++i) {
    ChannelSet near = random_channels(rng);
    ChannelSet far = near;
    far.hE *= std::pow(10.0, -10.536 / 20.0);  // 35 log10(2) dB

    RngStream ra(500 + i), rb(500 + i);
    const KnownCsiSolution sn =
        solve_known_csi(near, config(KnownCsiMethod::SDR), kFe, kK, kEh, ra);
    const KnownCsiSolution sf =
        solve_known_csi(far, config(KnownCsiMethod::SDR), kFe, kK, kEh, rb);
    CHECK(sf.secrecy_rate >= sn.secrecy_rate - 1e-6);
  }
}

TEST_CASE("unreachable relay QoS is infeasible") {
  ChannelSet ch;
  ch.h1 = 2.066e-5;
  ch.h2 = 0.6e-5;
  RngStream rng(4);
  CHECK_THROWS_AS(
      solve_known_csi(ch, config(KnownCsiMethod::SDR, 3.5), kFe, kK, kEh, rng),
      InfeasibleError);
}

TEST_CASE("interval endpoints respect the closed forms") {
  RngStream rng(15);
  const ChannelSet ch = random_channels(rng);
  RngStream solver_rng(2);
  const KnownCsiSolution sol =
      solve_known_csi(ch, config(KnownCsiMethod::ZF), kFe, kK, kEh, solver_rng);
  const auto [p1, p2] = optimal_message_powers(ch, 2.0, kK, kFe);
  const double headroom =
      kFe.max_current / 2.0 - std::sqrt(p1) - std::sqrt(p2);
  CHECK(sol.pd_hi == doctest::Approx(headroom * headroom).epsilon(1e-12));
  CHECK(sol.pa.p1 == p1);
  CHECK(sol.pa.p2 == p2);
  CHECK(sol.pa.dc_bias ==
        doctest::Approx(kFe.max_current - std::sqrt(p1) - std::sqrt(p2) -
                        std::sqrt(sol.pa.pd))
            .epsilon(1e-12));
}
