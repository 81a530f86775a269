/*
 * detc - decentralized event-triggered control toolkit.
 *
 * C interface to the simulation and verification core. All objects are
 * opaque handles created and destroyed through this API; every fallible
 * call returns a detc_status, and detc_last_error() describes the most
 * recent failure on the calling thread. Strings returned through char**
 * out-parameters are heap-allocated and must be released with
 * detc_string_free().
 */
#ifndef DETC_DETC_H
#define DETC_DETC_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum detc_status {
    DETC_OK = 0,
    DETC_ERROR_INVALID_ARGUMENT = 1, /* null handle / bad enum value */
    DETC_ERROR_SPEC = 2,             /* invalid problem definition */
    DETC_ERROR_NUMERIC = 3,          /* non-finite evaluation */
    DETC_ERROR_CONTRACT = 4,         /* calling-contract violation */
    DETC_ERROR_PARSE = 5,            /* malformed configuration */
    DETC_ERROR_IO = 6,               /* filesystem failure */
    DETC_ERROR_INTERNAL = 7
} detc_status;

typedef enum detc_controller {
    DETC_CONTROLLER_CCS = 0,  /* continuous state feedback */
    DETC_CONTROLLER_ETCS = 1  /* event-triggered state + input broadcasting */
} detc_controller;

typedef struct detc_scenario detc_scenario;
typedef struct detc_result detc_result;

const char *detc_version(void);
const char *detc_status_name(detc_status status);
/* Message of the last failure on this thread; empty string when none. */
const char *detc_last_error(void);
void detc_string_free(char *s);

/* ---- scenarios ---------------------------------------------------- */

/* Newline-separated list of registered scenario names. */
detc_status detc_builtin_names(char **out);
detc_status detc_scenario_builtin(const char *name, detc_scenario **out);
/* Load a JSON configuration file. scenario_override (may be NULL) selects
 * the built-in plant instead of the file's scenario.name. */
detc_status detc_scenario_load(const char *path, const char *scenario_override,
                               detc_scenario **out);
detc_status detc_scenario_save(const detc_scenario *s, const char *path);
detc_status detc_scenario_config_json(const detc_scenario *s, char **out);
/* Copy of the scenario with all triggering thresholds multiplied by factor. */
detc_status detc_scenario_scale_thresholds(const detc_scenario *s, double factor,
                                           detc_scenario **out);
void detc_scenario_free(detc_scenario *s);

int detc_scenario_subsystem_count(const detc_scenario *s);
int detc_scenario_order(const detc_scenario *s, int i);
double detc_scenario_dt(const detc_scenario *s);
double detc_scenario_horizon(const detc_scenario *s);
const char *detc_scenario_name(const detc_scenario *s);
/* Newline-separated modelling caveats recorded with the scenario. */
detc_status detc_scenario_notes(const detc_scenario *s, char **out);

/* ---- gain table and transform constants --------------------------- */

/* CSV columns i,k,l,xi,K,dz,dalpha covering the virtual-controller
 * coefficients and the triggering-error bounds. */
detc_status detc_gain_table_csv(const detc_scenario *s, char **out);
/* Frobenius norm of the subsystem's error-to-state transform. */
detc_status detc_lemma1_constant(const detc_scenario *s, int i, double *out);
/* Randomized transform checks; *pass is 1 when every check holds. */
detc_status detc_lemma1_report_csv(const detc_scenario *s, int samples,
                                   unsigned long long seed, char **out, int *pass);

/* ---- simulation ---------------------------------------------------- */

detc_status detc_run(const detc_scenario *s, detc_controller controller, detc_result **out);
void detc_result_free(detc_result *r);

/* Number of recorded grid points (steps + 1 unless truncated). */
int detc_result_grid_size(const detc_result *r);
/* 1 when the divergence guard ended the run early. */
int detc_result_truncated(const detc_result *r);
double detc_result_kappa(const detc_result *r);
/* Tail sup of |x_{i,1}| over [tail_start, end of run]. */
detc_status detc_result_residual(const detc_result *r, double tail_start, int i, double *out);
/* Total broadcast events excluding the t = 0 initialization. */
detc_status detc_result_event_count(const detc_result *r, int *out);
detc_status detc_result_write_trajectory_csv(const detc_result *r, const char *path);
detc_status detc_result_write_events_csv(const detc_result *r, const char *path);
/* Per-channel count/min-gap/mean-gap statistics as CSV. */
detc_status detc_result_stats_csv(const detc_result *r, char **out);

/* ---- verification --------------------------------------------------*/

/* Triggering-error bound check along a recorded triggered run. */
detc_status detc_lemma2_report_csv(const detc_result *r, const detc_scenario *s, char **out,
                                   int *pass);
/* Finite event counts and minimum inter-event gap >= dt per channel. */
detc_status detc_zeno_report_csv(const detc_result *r, char **out, int *pass);
/* Largest per-state-signal sup distance between two runs (same grid). */
detc_status detc_compare_max_state_distance(const detc_result *a, const detc_result *b,
                                            double *out);
/* Compare two trajectory CSV files signal-by-signal; CSV columns
 * signal,sup_distance. */
detc_status detc_compare_files_csv(const char *trajectory_a, const char *trajectory_b,
                                   char **out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DETC_DETC_H */
