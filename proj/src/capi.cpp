#include "vlcsec/vlcsec.h"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#include "scenario.hpp"
#include "svg_plot.hpp"
#include "sweep.hpp"

struct vlcsec_scenario {
  vlcsec::ScenarioConfig cfg;
};

struct vlcsec_curve {
  vlcsec::CurveTable table;
};

namespace {

thread_local std::string g_last_error;

vlcsec_status fail(vlcsec_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

// exception -> status code mapping at the API boundary
template <typename Fn>
vlcsec_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const vlcsec::ConfigError& e) {
    return fail(VLCSEC_ERR_CONFIG, e.what());
  } catch (const vlcsec::InfeasibleError& e) {
    return fail(VLCSEC_ERR_SOLVER, e.what());
  } catch (const vlcsec::SolverError& e) {
    return fail(VLCSEC_ERR_SOLVER, e.what());
  } catch (const vlcsec::IoError& e) {
    return fail(VLCSEC_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(VLCSEC_ERR_SOLVER, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* vlcsec_version(void) { return "1.0.0"; }

const char* vlcsec_status_name(vlcsec_status s) {
  switch (s) {
    case VLCSEC_OK: return "ok";
    case VLCSEC_ERR_CONFIG: return "config-error";
    case VLCSEC_ERR_SOLVER: return "solver-error";
    case VLCSEC_ERR_IO: return "io-error";
    case VLCSEC_ERR_INVALID: return "invalid-argument";
  }
  return "unknown";
}

const char* vlcsec_last_error(void) { return g_last_error.c_str(); }

vlcsec_status vlcsec_scenario_default(vlcsec_scenario** out) {
  if (!out) return fail(VLCSEC_ERR_INVALID, "null output pointer");
  return guarded([&] {
    *out = new vlcsec_scenario{};
    return VLCSEC_OK;
  });
}

vlcsec_status vlcsec_scenario_from_file(const char* path,
                                        vlcsec_scenario** out) {
  if (!out || !path) return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    auto cfg = vlcsec::ScenarioConfig::from_file(path);
    *out = new vlcsec_scenario{std::move(cfg)};
    return VLCSEC_OK;
  });
}

vlcsec_status vlcsec_scenario_set(vlcsec_scenario* sc, const char* key,
                                  const char* value) {
  if (!sc || !key || !value) return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    sc->cfg.set(key, value);
    return VLCSEC_OK;
  });
}

vlcsec_status vlcsec_scenario_get(const vlcsec_scenario* sc, const char* key,
                                  char* buf, size_t buflen) {
  if (!sc || !key || !buf || buflen == 0)
    return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    const std::string v = sc->cfg.get(key);
    if (v.size() + 1 > buflen)
      return fail(VLCSEC_ERR_INVALID, "buffer too small");
    std::memcpy(buf, v.c_str(), v.size() + 1);
    return VLCSEC_OK;
  });
}

void vlcsec_scenario_free(vlcsec_scenario* sc) { delete sc; }

vlcsec_status vlcsec_run_sweep(const vlcsec_scenario* sc, vlcsec_curve** out) {
  if (!sc || !out) return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    auto table = vlcsec::run_sweep(sc->cfg);
    *out = new vlcsec_curve{std::move(table)};
    return VLCSEC_OK;
  });
}

size_t vlcsec_curve_rows(const vlcsec_curve* c) {
  return c ? c->table.rows.size() : 0;
}

vlcsec_status vlcsec_curve_row_get(const vlcsec_curve* c, size_t index,
                                   vlcsec_curve_row* out) {
  if (!c || !out) return fail(VLCSEC_ERR_INVALID, "null argument");
  if (index >= c->table.rows.size())
    return fail(VLCSEC_ERR_INVALID, "row index out of range");
  const vlcsec::CurvePoint& p = c->table.rows[index];
  out->value = p.value;
  std::snprintf(out->method, sizeof out->method, "%s", p.method.c_str());
  out->mean_secrecy_bps_hz = p.mean;
  out->std_error = p.std_err;
  out->trials = p.trials;
  out->infeasible_count = p.infeasible;
  return VLCSEC_OK;
}

vlcsec_status vlcsec_curve_write_csv(const vlcsec_curve* c, const char* path) {
  if (!c || !path) return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    vlcsec::write_csv(c->table, path);
    return VLCSEC_OK;
  });
}

vlcsec_status vlcsec_curve_render_svg(const vlcsec_curve* c,
                                      const char* path) {
  if (!c || !path) return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    vlcsec::render_plot(c->table, path);
    return VLCSEC_OK;
  });
}

void vlcsec_curve_free(vlcsec_curve* c) { delete c; }

vlcsec_status vlcsec_solve_report(const vlcsec_scenario* sc, char** text_out) {
  if (!sc || !text_out) return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    const std::string text = vlcsec::solve_report_text(sc->cfg);
    *text_out = dup_string(text);
    if (!*text_out) return fail(VLCSEC_ERR_INVALID, "allocation failed");
    return VLCSEC_OK;
  });
}

vlcsec_status vlcsec_oracle_report(const vlcsec_scenario* sc, int instances,
                                   double* max_rel_gap_out, char** text_out) {
  if (!sc) return fail(VLCSEC_ERR_INVALID, "null argument");
  return guarded([&] {
    const int n = instances > 0 ? instances : sc->cfg.oracle_instances;
    const vlcsec::OracleReport rep = vlcsec::oracle_report(sc->cfg, n);
    if (max_rel_gap_out) *max_rel_gap_out = rep.max_rel_gap;
    if (text_out) {
      *text_out = dup_string(rep.text);
      if (!*text_out) return fail(VLCSEC_ERR_INVALID, "allocation failed");
    }
    return VLCSEC_OK;
  });
}

void vlcsec_string_free(char* s) { std::free(s); }

}  // extern "C"
