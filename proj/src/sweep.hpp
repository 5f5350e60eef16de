#pragma once

#include "scenario.hpp"

namespace vlcsec {

struct TrialRecord {
  int trial_index = 0;
  double h1 = 0.0, h2 = 0.0;
  double hd_norm = 0.0, he_norm = 0.0;
  PowerAllocation pa;
  double secrecy_rate = 0.0;
  bool feasible = false;
  std::string solver_status;
};

struct CurvePoint {
  double value = 0.0;
  std::string method;
  double mean = 0.0;     // floored at zero for reporting
  double std_err = 0.0;  // standard error of the (unfloored) trial mean
  int trials = 0;
  int infeasible = 0;
};

struct CurveTable {
  std::string sweep_var;
  std::vector<CurvePoint> rows;  // value-major, method-minor ordering
};

struct SweepResult {
  CurveTable table;
  std::vector<TrialRecord> records;  // all (value, method, trial) solves
};

// Seeded Monte-Carlo sweep over the configured variable. Fully
// deterministic: per-trial streams are derived from
// (seed, sweep index, trial index), so any execution order gives the same
// table. A point whose failures exceed half the trials raises SolverError.
SweepResult run_sweep_detailed(const ScenarioConfig& cfg);
CurveTable run_sweep(const ScenarioConfig& cfg);

std::string csv_string(const CurveTable& table);
void write_csv(const CurveTable& table, const std::string& path);
CurveTable parse_csv_string(const std::string& text);
CurveTable parse_csv(const std::string& path);

// Single-instance solve over the first trial draw; returns a readable
// multi-line report of every configured method.
std::string solve_report_text(const ScenarioConfig& cfg);

struct OracleReport {
  int instances = 0;
  double max_rel_gap = 0.0;       // |extracted - oracle| / oracle
  double max_over_relaxation = 0.0;  // extracted - relaxation (<= 0 expected)
  std::string text;
};

// Brute-force-vs-SDP comparison over seeded random instances.
OracleReport oracle_report(const ScenarioConfig& cfg, int instances);

}  // namespace vlcsec
