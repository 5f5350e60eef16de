// Command-line front end. Talks to the core exclusively through the C API.
#include <vlcsec/vlcsec.h>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"

namespace {

int exit_code_for(vlcsec_status s) {
  if (s == VLCSEC_OK) return 0;
  if (s == VLCSEC_ERR_SOLVER) return 2;
  return 1;
}

int report_failure(vlcsec_status s) {
  std::fprintf(stderr, "error (%s): %s\n", vlcsec_status_name(s),
               vlcsec_last_error());
  return exit_code_for(s);
}

struct ScenarioHandle {
  vlcsec_scenario* p = nullptr;
  ~ScenarioHandle() { vlcsec_scenario_free(p); }
};

struct CurveHandle {
  vlcsec_curve* p = nullptr;
  ~CurveHandle() { vlcsec_curve_free(p); }
};

struct Overrides {
  std::string seed, trials, method;
};

vlcsec_status apply_overrides(vlcsec_scenario* sc, const Overrides& ov) {
  vlcsec_status s = VLCSEC_OK;
  if (!ov.seed.empty()) s = vlcsec_scenario_set(sc, "run.seed", ov.seed.c_str());
  if (s == VLCSEC_OK && !ov.trials.empty())
    s = vlcsec_scenario_set(sc, "run.trials", ov.trials.c_str());
  if (s == VLCSEC_OK && !ov.method.empty())
    s = vlcsec_scenario_set(sc, "run.method", ov.method.c_str());
  return s;
}

vlcsec_status open_scenario(const std::string& config_path,
                            const Overrides& ov, ScenarioHandle& out) {
  vlcsec_status s = config_path.empty()
                        ? vlcsec_scenario_default(&out.p)
                        : vlcsec_scenario_from_file(config_path.c_str(), &out.p);
  if (s != VLCSEC_OK) return s;
  return apply_overrides(out.p, ov);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "vlcsec: secrecy-rate optimization for cooperative-NOMA hybrid "
      "VLC/RF relay links"};
  app.require_subcommand(1);

  Overrides ov;
  std::string config_path, out_path, plot_path;
  int instances = 0;

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run a seeded Monte-Carlo sweep and write CSV (and SVG)");
  sweep->add_option("--config", config_path, "scenario config file")
      ->required();
  sweep->add_option("--out", out_path, "output CSV path")->required();
  sweep->add_option("--plot", plot_path, "optional output SVG path");
  sweep->add_option("--seed", ov.seed, "override run.seed");
  sweep->add_option("--trials", ov.trials, "override run.trials");
  sweep->add_option("--method", ov.method,
                    "override run.method (sdr|zf|mrt|an-sdr|an-mrt|all)");

  CLI::App* solve = app.add_subcommand(
      "solve", "solve a single channel instance and print the solution");
  solve->add_option("--config", config_path, "scenario config file")
      ->required();
  solve->add_option("--seed", ov.seed, "override run.seed");
  solve->add_option("--method", ov.method, "override run.method");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "compare SDR beamformers against the brute-force oracle");
  oracle->add_option("--config", config_path,
                     "scenario config file (defaults used when omitted)");
  oracle->add_option("--instances", instances, "number of random instances");
  oracle->add_option("--seed", ov.seed, "override run.seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // prints help, exit 0
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the error and usage
    return 1;
  }

  ScenarioHandle sc;
  vlcsec_status s = open_scenario(config_path, ov, sc);
  if (s != VLCSEC_OK) return report_failure(s);

  if (sweep->parsed()) {
    CurveHandle curve;
    s = vlcsec_run_sweep(sc.p, &curve.p);
    if (s != VLCSEC_OK) return report_failure(s);
    s = vlcsec_curve_write_csv(curve.p, out_path.c_str());
    if (s != VLCSEC_OK) return report_failure(s);
    std::printf("wrote %zu rows to %s\n", vlcsec_curve_rows(curve.p),
                out_path.c_str());
    if (!plot_path.empty()) {
      s = vlcsec_curve_render_svg(curve.p, plot_path.c_str());
      if (s != VLCSEC_OK) return report_failure(s);
      std::printf("wrote plot to %s\n", plot_path.c_str());
    }
    return 0;
  }

  if (solve->parsed()) {
    char* text = nullptr;
    s = vlcsec_solve_report(sc.p, &text);
    if (s != VLCSEC_OK) return report_failure(s);
    std::fputs(text, stdout);
    vlcsec_string_free(text);
    return 0;
  }

  // oracle
  char* text = nullptr;
  double max_gap = 0.0;
  s = vlcsec_oracle_report(sc.p, instances, &max_gap, &text);
  if (s != VLCSEC_OK) return report_failure(s);
  std::fputs(text, stdout);
  vlcsec_string_free(text);
  return 0;
}
