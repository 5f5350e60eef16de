/* vlcsec: secrecy-rate optimization for cooperative-NOMA hybrid VLC/RF
 * relay links. C API over the C++ core: opaque handles, status codes, and
 * a thread-local error message. All functions are safe to call from
 * multiple threads on distinct handles. */
#ifndef VLCSEC_H
#define VLCSEC_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum vlcsec_status {
  VLCSEC_OK = 0,
  VLCSEC_ERR_CONFIG = 1,  /* bad parameters, malformed config, unknown key */
  VLCSEC_ERR_SOLVER = 2,  /* optimizer hard failure */
  VLCSEC_ERR_IO = 3,      /* file read/write failure */
  VLCSEC_ERR_INVALID = 4  /* null handle or bad argument */
} vlcsec_status;

/* Full experiment description (opaque). */
typedef struct vlcsec_scenario vlcsec_scenario;
/* Aggregated sweep results (opaque). */
typedef struct vlcsec_curve vlcsec_curve;

typedef struct vlcsec_curve_row {
  double value;
  char method[16];
  double mean_secrecy_bps_hz;
  double std_error;
  int trials;
  int infeasible_count;
} vlcsec_curve_row;

const char* vlcsec_version(void);
const char* vlcsec_status_name(vlcsec_status s);
/* Message describing the most recent failure on this thread. */
const char* vlcsec_last_error(void);

/* Scenario handles. Keys use the config-file naming (section.key); values
 * are plain strings, e.g. ("run.trials", "300"). */
vlcsec_status vlcsec_scenario_default(vlcsec_scenario** out);
vlcsec_status vlcsec_scenario_from_file(const char* path,
                                        vlcsec_scenario** out);
vlcsec_status vlcsec_scenario_set(vlcsec_scenario* sc, const char* key,
                                  const char* value);
vlcsec_status vlcsec_scenario_get(const vlcsec_scenario* sc, const char* key,
                                  char* buf, size_t buflen);
void vlcsec_scenario_free(vlcsec_scenario* sc);

/* Seeded Monte-Carlo sweep over the configured variable. */
vlcsec_status vlcsec_run_sweep(const vlcsec_scenario* sc, vlcsec_curve** out);
size_t vlcsec_curve_rows(const vlcsec_curve* c);
vlcsec_status vlcsec_curve_row_get(const vlcsec_curve* c, size_t index,
                                   vlcsec_curve_row* out);
vlcsec_status vlcsec_curve_write_csv(const vlcsec_curve* c, const char* path);
vlcsec_status vlcsec_curve_render_svg(const vlcsec_curve* c,
                                      const char* path);
void vlcsec_curve_free(vlcsec_curve* c);

/* Single-instance solve report (malloc'ed text; free with
 * vlcsec_string_free). */
vlcsec_status vlcsec_solve_report(const vlcsec_scenario* sc, char** text_out);

/* Brute-force-vs-SDP comparison over `instances` seeded channel draws;
 * instances <= 0 uses the scenario's solver.oracle_instances. */
vlcsec_status vlcsec_oracle_report(const vlcsec_scenario* sc, int instances,
                                   double* max_rel_gap_out, char** text_out);

void vlcsec_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif /* VLCSEC_H */
