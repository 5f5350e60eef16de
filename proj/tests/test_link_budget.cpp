#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "link_budget.hpp"
#include "rng.hpp"

using namespace vlcsec;

namespace {
const VlcFrontEnd kFe;
const RfModel kRf;
const EnergyHarvestParams kEh;
const VlcSystemConstants kK = make_constants(kFe, kRf, 0.8);

ChannelSet flat_channels(double h1, double h2) {
  ChannelSet ch;
  ch.h1 = h1;
  ch.h2 = h2;
  return ch;
}
}  // namespace

TEST_CASE("derived system constants") {
  CHECK(kK.c_const == doctest::Approx(0.05854983152431917).epsilon(1e-12));
  CHECK(kK.sigma_v_sq == doctest::Approx(2e-14).epsilon(1e-12));
  CHECK(kK.sigma_rf_sq ==
        doctest::Approx(6.369714728855978e-14).epsilon(1e-12));
  CHECK_THROWS_AS(make_constants(kFe, kRf, 0.0), ConfigError);
  CHECK_THROWS_AS(make_constants(kFe, kRf, 1.5), ConfigError);
}

TEST_CASE("relay rate hits two bits at an SNR of fifteen") {
  const ChannelSet ch = flat_channels(2.066e-5, 2.066e-5);
  // P1 that makes c rho^2 nu^2 h1^2 P1 / sigma_v^2 = 15
  const double conv = kK.c_const * kFe.oe_factor * kFe.oe_factor *
                      kFe.eo_factor * kFe.eo_factor * ch.h1 * ch.h1;
  PowerAllocation pa;
  pa.p1 = 15.0 * kK.sigma_v_sq / conv;
  pa.dc_bias = 0.3;
  const RateBundle r = noma_rates(pa, ch, kK, kFe);
  CHECK(r.r_u1 == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("no interference on the weak relay when p1 is zero") {
  const ChannelSet ch = flat_channels(2.1e-5, 1.3e-5);
  PowerAllocation pa;
  pa.p2 = 3e-4;
  const double conv2 = kK.c_const * kFe.oe_factor * kFe.oe_factor *
                       kFe.eo_factor * kFe.eo_factor * ch.h2 * ch.h2;
  const RateBundle r = noma_rates(pa, ch, kK, kFe);
  CHECK(r.r_u2 ==
        doctest::Approx(0.5 * std::log2(1.0 + conv2 * pa.p2 / kK.sigma_v_sq))
            .epsilon(1e-12));
}

TEST_CASE("equal gains give equal relay-to-destination rates") {
  const ChannelSet ch = flat_channels(1.8e-5, 1.8e-5);
  PowerAllocation pa;
  pa.p1 = 1e-4;
  pa.p2 = 2e-4;
  pa.pd = 5e-3;
  const RateBundle r = noma_rates(pa, ch, kK, kFe);
  CHECK(r.r_u1_to_d == r.r_u2_to_d);
}

TEST_CASE("rates are monotone in their own power and in interference") {
  RngStream rng(11);
  for (int i = 0; i < 200; ++i) {
    const ChannelSet ch =
        flat_channels(1e-5 + 2e-5 * rng.uniform01(),
                      1e-6 + 9e-6 * rng.uniform01());
    PowerAllocation pa;
    pa.p1 = 1e-4 * rng.uniform01();
    pa.p2 = 1e-3 * rng.uniform01();
    pa.pd = 1e-2 * rng.uniform01();
    const RateBundle base = noma_rates(pa, ch, kK, kFe);

    PowerAllocation up = pa;
    up.p1 *= 1.01;
    up.p1 += 1e-9;
    const RateBundle b1 = noma_rates(up, ch, kK, kFe);
    CHECK(b1.r_u1 >= base.r_u1);          // own power
    CHECK(b1.r_u2 <= base.r_u2);          // interference
    CHECK(b1.r_u1_to_d <= base.r_u1_to_d);

    up = pa;
    up.pd *= 1.01;
    up.pd += 1e-9;
    const RateBundle b2 = noma_rates(up, ch, kK, kFe);
    CHECK(b2.r_u1_to_d >= base.r_u1_to_d);
    CHECK(b2.r_u2_to_d >= base.r_u2_to_d);
  }
}

TEST_CASE("harvested power reference values") {
  CHECK(harvested_power(2.066e-5, 0.0, kEh, kFe) == 0.0);
  CHECK(harvested_power(2.066e-5, 0.3, kEh, kFe) ==
        doctest::Approx(7.823665775070856e-06).epsilon(1e-12));
  CHECK(harvested_power(2.066e-5, 0.6, kEh, kFe) ==
        doctest::Approx(1.6501184762386716e-05).epsilon(1e-12));
  // four significant digits as commonly quoted
  CHECK(harvested_power(2.066e-5, 0.3, kEh, kFe) ==
        doctest::Approx(7.82e-6).epsilon(5e-4));
}

TEST_CASE("harvested power grows in bias and in gain") {
  double prev = 0.0;
  for (double b = 0.05; b <= 0.6; b += 0.05) {
    const double p = harvested_power(2e-5, b, kEh, kFe);
    CHECK(p > prev);
    prev = p;
  }
  prev = 0.0;
  for (double h = 1e-6; h <= 3e-5; h += 1e-6) {
    const double p = harvested_power(h, 0.3, kEh, kFe);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("secrecy rate of the wiretap hop") {
  const double s = kK.sigma_rf_sq;
  ChannelSet ch;
  ch.hD = Eigen::Vector2cd(std::sqrt(15.0 * s), 0.0);
  ch.hE = Eigen::Vector2cd(std::sqrt(3.0 * s), 0.0);
  const Eigen::Vector2cd w(1.0, 0.0);
  CHECK(rf_secrecy_rate(w, ch, kK) == doctest::Approx(1.0).epsilon(1e-12));

  ch.hE = Eigen::Vector2cd(0.0, 0.0);
  CHECK(rf_secrecy_rate(w, ch, kK) ==
        doctest::Approx(0.5 * std::log2(16.0)).epsilon(1e-12));

  ch.hE = ch.hD;
  CHECK(rf_secrecy_rate(w, ch, kK) == 0.0);

  // stronger eavesdropper clamps at zero
  ch.hE = Eigen::Vector2cd(std::sqrt(40.0 * s), 0.0);
  CHECK(rf_secrecy_rate(w, ch, kK) == 0.0);
}

TEST_CASE("secrecy rate ignores a global beam phase") {
  RngStream rng(3);
  for (int i = 0; i < 100; ++i) {
    ChannelSet ch;
    ch.hD = Eigen::Vector2cd(rng.cnormal(), rng.cnormal()) * 1e-6;
    ch.hE = Eigen::Vector2cd(rng.cnormal(), rng.cnormal()) * 1e-6;
    const Eigen::Vector2cd w(rng.cnormal(), rng.cnormal());
    const double phase = rng.uniform(0.0, 6.28);
    const Eigen::Vector2cd w2 = w * std::polar(1.0, phase);
    CHECK(rf_secrecy_rate(w, ch, kK) ==
          doctest::Approx(rf_secrecy_rate(w2, ch, kK)).epsilon(1e-10));
  }
}

TEST_CASE("jamming terms") {
  RngStream rng(17);
  ChannelSet ch;
  ch.hD = Eigen::Vector2cd(rng.cnormal(), rng.cnormal()) * 1e-6;
  ch.hE = Eigen::Vector2cd(rng.cnormal(), rng.cnormal()) * 1e-6;
  const Eigen::Vector2cd w(rng.cnormal() * 1e-3, rng.cnormal() * 1e-3);

  SUBCASE("no jamming reduces to the plain eavesdropper term") {
    const AnRates r = an_rf_secrecy_terms(w, Eigen::Vector2cd(0, 0), ch, kK);
    const double plain =
        0.5 * std::log2(1.0 + std::norm(ch.hE.dot(w)) / kK.sigma_rf_sq);
    CHECK(r.eav_rate == doctest::Approx(plain).epsilon(1e-12));
  }

  SUBCASE("the orthogonal construction nulls the destination exactly") {
    const double beta = 4e-3;
    const Eigen::Vector2cd na =
        beta * Eigen::Vector2cd(std::conj(ch.hD(1)), -std::conj(ch.hD(0)));
    CHECK(std::abs(ch.hD.dot(na)) <=
          1e-12 * ch.hD.norm() * na.norm());
    // destination rate with the jamming term included in the denominator
    const double with_na =
        0.5 * std::log2(1.0 + std::norm(ch.hD.dot(w)) /
                                  (kK.sigma_rf_sq + std::norm(ch.hD.dot(na))));
    const AnRates r = an_rf_secrecy_terms(w, na, ch, kK);
    CHECK(std::abs(r.dest_rate - with_na) < 1e-12);
  }

  SUBCASE("overwhelming jamming drives the eavesdropper rate to zero") {
    const Eigen::Vector2cd na =
        1e12 * Eigen::Vector2cd(std::conj(ch.hD(1)), -std::conj(ch.hD(0)));
    const AnRates r = an_rf_secrecy_terms(w, na, ch, kK);
    CHECK(r.eav_rate < 1e-9);
  }
}

TEST_CASE("feasibility checks and tolerance semantics") {
  FeasibilityConfig cfg;
  cfg.r_th = 0.0;
  cfg.max_current = 0.6;
  cfg.rel_tol = 1e-8;

  PowerAllocation pa;
  pa.dc_bias = 0.3;
  RateBundle r{};
  CHECK(check_feasibility(pa, r, cfg).ok());

  pa.dc_bias = 0.15;  // I_H / 4
  const FeasibilityReport rep = check_feasibility(pa, r, cfg);
  CHECK(!rep.ok());
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0] == "dc_bias_lower_bound");

  // amplitude budget exceeded by 1e-12 passes under the relative tolerance
  pa.dc_bias = 0.3;
  const double amp = 0.3 + 1e-12;
  pa.p1 = amp * amp;
  CHECK(check_feasibility(pa, r, cfg).ok());

  // a clear violation is reported
  pa.p1 = 0.32 * 0.32;
  const FeasibilityReport rep2 = check_feasibility(pa, r, cfg);
  CHECK(!rep2.ok());
  CHECK(rep2.violations[0] == "amplitude_budget");

  // relay QoS violations are named
  cfg.r_th = 1.0;
  pa.p1 = 0.0;
  const FeasibilityReport rep3 = check_feasibility(pa, r, cfg);
  CHECK(!rep3.ok());
  CHECK(rep3.violations.size() == 2);
}
