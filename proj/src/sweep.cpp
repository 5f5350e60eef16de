#include "sweep.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "known_csi.hpp"
#include "unknown_csi.hpp"

namespace vlcsec {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

// seed salts for the independent sub-streams of one trial
constexpr std::uint64_t kSaltSolver = 0x51;
constexpr std::uint64_t kSaltEav = 0xEA57;

bool is_known_csi(Method m) { return m == Method::SDR || m == Method::ZF; }

EavSampler make_ring_eav_sampler(const ScenarioDraw& draw,
                                 const ScenarioConfig& cfg, double ring) {
  const Position3D u1 = draw.user1;
  const Position3D u2 = draw.user2;
  const RfModel rf = cfg.rf;
  const double height = cfg.user_height;
  return [u1, u2, rf, height, ring](RngStream& rng) {
    const double a = rng.uniform(0.0, kTwoPi);
    const Position3D pos{ring * std::cos(a), ring * std::sin(a), height};
    Eigen::Vector2cd hE;
    hE(0) = sample_rf_channel(u1, pos, rf, rng);
    hE(1) = sample_rf_channel(u2, pos, rf, rng);
    return hE;
  };
}

struct TrialValue {
  double rate = 0.0;     // end-to-end secrecy value recorded for the curve
  double rate_rf = 0.0;  // RF-hop term alone
  PowerAllocation pa;
};

TrialValue solve_trial(const ScenarioDraw& draw, Method m,
                       const ScenarioConfig& cfg, std::uint64_t trial_seed) {
  const VlcSystemConstants k = cfg.constants();
  TrialValue out;

  if (is_known_csi(m)) {
    KnownCsiConfig kc;
    kc.r_th = cfg.r_th;
    kc.eta = cfg.eta;
    kc.method =
        m == Method::SDR ? KnownCsiMethod::SDR : KnownCsiMethod::ZF;
    kc.bisection_tol = cfg.bisection_tol;
    kc.max_iters = cfg.bisection_max_iters;
    kc.randomization_samples = cfg.randomization_samples;
    RngStream rng(derive_seed(trial_seed, kSaltSolver,
                              static_cast<std::uint64_t>(m)));
    const KnownCsiSolution sol =
        solve_known_csi(draw.ch, kc, cfg.vlc, k, cfg.harvest, rng);
    out.rate = sol.secrecy_rate;
    out.rate_rf = sol.secrecy_rate_rf;
    out.pa = sol.pa;
    return out;
  }

  UnknownCsiConfig uc;
  uc.r_th = cfg.r_th;
  uc.r_th_d = cfg.r_th_d;
  uc.eta = cfg.eta;
  uc.eav_distance_min = cfg.eav_ring();
  uc.expectation_samples = cfg.expectation_samples;
  uc.clamp_per_draw = cfg.clamp_per_draw;
  uc.printed_power_rows = cfg.printed_power_rows;
  uc.randomization_samples = cfg.randomization_samples;

  UnknownCsiSolution sol;
  if (m == Method::MRT) {
    uc.method = UnknownCsiMethod::BASELINE_MRT;
    sol = baseline_mrt_plan(draw.ch, uc, cfg.vlc, k, cfg.harvest);
  } else if (m == Method::AN_SDR) {
    uc.method = UnknownCsiMethod::AN_SDR;
    RngStream rng(derive_seed(trial_seed, kSaltSolver,
                              static_cast<std::uint64_t>(m)));
    sol = an_sdr_plan(draw.ch, uc, cfg.vlc, k, cfg.harvest, rng);
  } else {
    uc.method = UnknownCsiMethod::AN_MRT;
    sol = an_mrt_plan(draw.ch, uc, cfg.vlc, k, cfg.harvest);
  }

  // eavesdropper draws are derived from the trial only, so every method
  // sees the same ring realizations
  RngStream eav_rng(derive_seed(trial_seed, kSaltEav, 0));
  const EavSampler sampler =
      make_ring_eav_sampler(draw, cfg, uc.eav_distance_min);
  const ExpectedRateParts parts =
      expected_secrecy_parts(sol, draw.ch, sampler, uc.expectation_samples,
                             eav_rng, k, uc.clamp_per_draw);
  out.rate = parts.combined;
  out.rate_rf = parts.mean_rf;
  out.pa = sol.pa;
  return out;
}

std::string fmt_row(const std::string& var, const CurvePoint& p) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%s,%.9g,%s,%.9g,%.9g,%d,%d\n", var.c_str(),
                p.value, p.method.c_str(), p.mean, p.std_err, p.trials,
                p.infeasible);
  return buf;
}

}  // namespace

SweepResult run_sweep_detailed(const ScenarioConfig& cfg) {
  cfg.validate();
  if (cfg.sweep_variable.empty())
    throw ConfigError("run_sweep: sweep.variable is not set");

  SweepResult result;
  result.table.sweep_var = cfg.sweep_variable;

  for (size_t vi = 0; vi < cfg.sweep_values.size(); ++vi) {
    const double value = cfg.sweep_values[vi];
    const ScenarioConfig cv = with_sweep_value(cfg, value);
    const bool emit_rf = cfg.emit_rf_rows;

    struct Acc {
      std::vector<double> vals, vals_rf;
      int infeasible = 0;
    };
    std::vector<Acc> acc(cfg.methods.size());

    for (int t = 0; t < cfg.trials; ++t) {
      const std::uint64_t trial_seed = derive_seed(cfg.seed, vi, t);
      RngStream geom_rng(trial_seed);
      const ScenarioDraw draw =
          sample_scenario_draw(cv.scene(), cv.vlc, cv.rf, geom_rng);

      for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        TrialRecord rec;
        rec.trial_index = t;
        rec.h1 = draw.ch.h1;
        rec.h2 = draw.ch.h2;
        rec.hd_norm = draw.ch.hD.norm();
        rec.he_norm = draw.ch.hE.norm();
        try {
          const TrialValue tv = solve_trial(draw, cfg.methods[mi], cv,
                                            trial_seed);
          acc[mi].vals.push_back(tv.rate);
          acc[mi].vals_rf.push_back(tv.rate_rf);
          rec.pa = tv.pa;
          rec.secrecy_rate = tv.rate;
          const FeasibilityReport rep = check_feasibility(
              tv.pa, noma_rates(tv.pa, draw.ch, cv.constants(), cv.vlc),
              FeasibilityConfig{cv.r_th, cv.vlc.max_current, 1e-8});
          rec.feasible = rep.ok();
          rec.solver_status = "ok";
        } catch (const InfeasibleError& e) {
          ++acc[mi].infeasible;
          rec.feasible = false;
          rec.solver_status = std::string("infeasible: ") + e.what();
        } catch (const SolverError& e) {
          ++acc[mi].infeasible;
          rec.feasible = false;
          rec.solver_status = std::string("solver: ") + e.what();
        }
        result.records.push_back(std::move(rec));
      }
    }

    for (size_t mi = 0; mi < cfg.methods.size(); ++mi) {
      const Acc& a = acc[mi];
      if (2 * a.infeasible > cfg.trials)
        throw SolverError("sweep point " + std::to_string(value) +
                          " failed on more than half of the trials");
      const auto aggregate = [&](const std::vector<double>& xs,
                                 const std::string& name) {
        CurvePoint p;
        p.value = value;
        p.method = name;
        p.trials = cfg.trials;
        p.infeasible = a.infeasible;
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        double var = 0.0;
        for (double x : xs) var += (x - mean) * (x - mean);
        p.std_err = xs.size() > 1
                        ? std::sqrt(var / (static_cast<double>(xs.size()) *
                                           (xs.size() - 1.0)))
                        : 0.0;
        p.mean = std::max(0.0, mean);  // rates are reported nonnegative
        return p;
      };
      result.table.rows.push_back(
          aggregate(a.vals, method_name(cfg.methods[mi])));
      if (emit_rf)
        result.table.rows.push_back(aggregate(
            a.vals_rf, std::string(method_name(cfg.methods[mi])) + "-rf"));
    }
  }
  return result;
}

CurveTable run_sweep(const ScenarioConfig& cfg) {
  return run_sweep_detailed(cfg).table;
}

std::string csv_string(const CurveTable& table) {
  std::string out =
      "sweep_var,value,method,mean_secrecy_bps_hz,stderr,trials,"
      "infeasible_count\n";
  for (const CurvePoint& p : table.rows) out += fmt_row(table.sweep_var, p);
  return out;
}

void write_csv(const CurveTable& table, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << csv_string(table);
  if (!out) throw IoError("write failed for '" + path + "'");
}

CurveTable parse_csv_string(const std::string& text) {
  std::stringstream ss(text);
  std::string line;
  if (!std::getline(ss, line))
    throw IoError("csv: empty input");
  if (line !=
      "sweep_var,value,method,mean_secrecy_bps_hz,stderr,trials,"
      "infeasible_count")
    throw IoError("csv: unexpected header '" + line + "'");

  CurveTable table;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (fields.size() != 7)
      throw IoError("csv: malformed row '" + line + "'");
    if (table.sweep_var.empty()) table.sweep_var = fields[0];
    CurvePoint p;
    p.value = std::stod(fields[1]);
    p.method = fields[2];
    p.mean = std::stod(fields[3]);
    p.std_err = std::stod(fields[4]);
    p.trials = std::stoi(fields[5]);
    p.infeasible = std::stoi(fields[6]);
    table.rows.push_back(std::move(p));
  }
  return table;
}

CurveTable parse_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open csv '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_csv_string(ss.str());
}

namespace {

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

std::string beam_text(const BeamformerSolution& b) {
  std::string s;
  s += fmt("    w      = (%.6g%+.6gi, %.6g%+.6gi)\n", b.w(0).real(),
           b.w(0).imag(), b.w(1).real(), b.w(1).imag());
  if (b.n_a.norm() > 0.0)
    s += fmt("    n_a    = (%.6g%+.6gi, %.6g%+.6gi)  beta = %.6g\n",
             b.n_a(0).real(), b.n_a(0).imag(), b.n_a(1).real(),
             b.n_a(1).imag(), b.beta);
  if (b.a != 0.0) s += fmt("    a      = %.6g\n", b.a);
  if (b.alpha1 != 0.0 || b.alpha2 != 0.0)
    s += fmt("    alpha  = (%.6g, %.6g)\n", b.alpha1, b.alpha2);
  if (b.degenerate) s += "    note   = degenerate fallback\n";
  return s;
}

}  // namespace

std::string solve_report_text(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::uint64_t trial_seed = derive_seed(cfg.seed, 0, 0);
  RngStream geom_rng(trial_seed);
  const ScenarioDraw draw =
      sample_scenario_draw(cfg.scene(), cfg.vlc, cfg.rf, geom_rng);
  const VlcSystemConstants k = cfg.constants();

  std::string out;
  out += fmt("channel draw (seed %llu)\n",
             static_cast<unsigned long long>(cfg.seed));
  out += fmt("  h1 = %.6g  h2 = %.6g\n", draw.ch.h1, draw.ch.h2);
  out += fmt("  |hD| = (%.6g, %.6g)  |hE| = (%.6g, %.6g)\n",
             std::abs(draw.ch.hD(0)), std::abs(draw.ch.hD(1)),
             std::abs(draw.ch.hE(0)), std::abs(draw.ch.hE(1)));

  for (Method m : cfg.methods) {
    out += fmt("method %s\n", method_name(m));
    try {
      if (is_known_csi(m)) {
        KnownCsiConfig kc;
        kc.r_th = cfg.r_th;
        kc.eta = cfg.eta;
        kc.method =
            m == Method::SDR ? KnownCsiMethod::SDR : KnownCsiMethod::ZF;
        kc.bisection_tol = cfg.bisection_tol;
        kc.max_iters = cfg.bisection_max_iters;
        kc.randomization_samples = cfg.randomization_samples;
        RngStream rng(derive_seed(trial_seed, kSaltSolver,
                                  static_cast<std::uint64_t>(m)));
        const KnownCsiSolution sol =
            solve_known_csi(draw.ch, kc, cfg.vlc, k, cfg.harvest, rng);
        out += fmt("    p1 = %.6g  p2 = %.6g  pd = %.6g  b = %.6g\n",
                   sol.pa.p1, sol.pa.p2, sol.pa.pd, sol.pa.dc_bias);
        out += beam_text(sol.beam);
        out += fmt("    rates: u1 = %.6g  u2 = %.6g  u1->D = %.6g  u2->D = %.6g\n",
                   sol.rates.r_u1, sol.rates.r_u2, sol.rates.r_u1_to_d,
                   sol.rates.r_u2_to_d);
        out += fmt("    secrecy_rate = %.6g  (rf hop %.6g, iters %d)\n",
                   sol.secrecy_rate, sol.secrecy_rate_rf, sol.iterations);
      } else {
        const TrialValue tv = solve_trial(draw, m, cfg, trial_seed);
        out += fmt("    p1 = %.6g  p2 = %.6g  pd = %.6g  b = %.6g\n",
                   tv.pa.p1, tv.pa.p2, tv.pa.pd, tv.pa.dc_bias);
        out += fmt("    avg_secrecy_rate = %.6g  (rf mean %.6g)\n", tv.rate,
                   tv.rate_rf);
      }
    } catch (const Error& e) {
      out += fmt("    error: %s\n", e.what());
    }
  }
  return out;
}

OracleReport oracle_report(const ScenarioConfig& cfg, int instances) {
  if (instances < 1) throw ConfigError("oracle: instances must be >= 1");
  const VlcSystemConstants k = cfg.constants();
  OracleReport rep;
  rep.instances = instances;
  std::string& text = rep.text;
  text += "instance, extracted, oracle, relaxation, rel_gap\n";

  for (int i = 0; i < instances; ++i) {
    RngStream rng(derive_seed(cfg.seed, 0x08ACDEULL, i));
    const ScenarioDraw draw =
        sample_scenario_draw(cfg.scene(), cfg.vlc, cfg.rf, rng);
    const double b = cfg.vlc.max_current / 2.0;
    const double pr1 = harvested_power(draw.ch.h1, b, cfg.harvest, cfg.vlc);
    const double pr2 = harvested_power(draw.ch.h2, b, cfg.harvest, cfg.vlc);

    RngStream rnd_rng(derive_seed(cfg.seed, 0x08ACDFULL, i));
    const SdrBeamResult sdr = sdr_secrecy_beamformer(
        draw.ch, pr1, pr2, k, cfg.randomization_samples, rnd_rng);
    const BeamformerSolution oracle = brute_force_oracle(
        draw.ch.hD, draw.ch.hE, pr1, pr2, k.sigma_rf_sq, cfg.oracle_grid);

    const double ext = sdr.beam.achieved_objective;
    const double orc = oracle.achieved_objective;
    const double gap = std::abs(ext - orc) / orc;
    rep.max_rel_gap = std::max(rep.max_rel_gap, gap);
    rep.max_over_relaxation =
        std::max(rep.max_over_relaxation, ext - sdr.relaxation_value);
    text += fmt("%d, %.9g, %.9g, %.9g, %.3g\n", i, ext, orc,
                sdr.relaxation_value, gap);
  }
  text += fmt("max relative gap: %.6g\n", rep.max_rel_gap);
  text += fmt("max extracted-minus-relaxation: %.6g\n",
              rep.max_over_relaxation);
  return rep;
}

}  // namespace vlcsec
