/*
 * attitude.h - C interface to the ambient-space attitude stabilization
 * library.
 *
 * All functions return an att_status. On failure, att_last_error() returns a
 * human-readable message for the calling thread, valid until the next call
 * into the library from that thread. Handles are opaque and owned by the
 * caller; release them with the matching *_destroy function. Destroying a
 * NULL handle is a no-op.
 *
 * Matrices cross the interface as 9 doubles in row-major order.
 */
#ifndef ATTITUDE_ATTITUDE_H
#define ATTITUDE_ATTITUDE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ATTITUDE_BUILDING_LIBRARY)
#    define ATT_API __declspec(dllexport)
#  else
#    define ATT_API __declspec(dllimport)
#  endif
#else
#  define ATT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum att_status {
  ATT_OK = 0,
  ATT_ERR_INVALID_ARGUMENT = 1,
  ATT_ERR_NOT_SKEW = 2,
  ATT_ERR_NOT_UNIT_AXIS = 3,
  ATT_ERR_INVALID_REFERENCE = 4,
  ATT_ERR_OFF_MANIFOLD = 5,
  ATT_ERR_NON_POSITIVE_GAIN = 6,
  ATT_ERR_INVALID_GAINS = 7,
  ATT_ERR_NON_FINITE_STATE = 8,
  ATT_ERR_INVALID_CONFIG = 9,
  ATT_ERR_PARSE = 10,
  ATT_ERR_IO = 11,
  ATT_ERR_INTERNAL = 99
} att_status;

typedef struct att_config_t* att_config;
typedef struct att_trajectory_t* att_trajectory;
typedef struct att_sweep_t* att_sweep;

ATT_API const char* att_version(void);
ATT_API const char* att_status_string(att_status status);
ATT_API const char* att_last_error(void);

/* ---- configuration ---------------------------------------------------- */

/* name: "ideal", "offmanifold" or "e2". */
ATT_API att_status att_config_builtin(const char* name, att_config* out);
/* Parses a key = value file on top of the "ideal" scenario. */
ATT_API att_status att_config_load(const char* path, att_config* out);
ATT_API att_status att_config_parse(const char* text, att_config* out);
/* Overrides one key; the updated configuration is re-validated. */
ATT_API att_status att_config_set(att_config cfg, const char* key,
                                  const char* value);
/* Writes the full key = value form (NUL-terminated) into buf. *needed
 * receives the required size including the terminator; pass buf = NULL to
 * query it. */
ATT_API att_status att_config_format(att_config cfg, char* buf, size_t size,
                                     size_t* needed);
ATT_API att_status att_config_destroy(att_config cfg);

/* ---- simulation ------------------------------------------------------- */

/* On ATT_ERR_NON_FINITE_STATE, *last_valid_time (if non-NULL) receives the
 * time of the last finite state and *out is left NULL. */
ATT_API att_status att_simulate(att_config cfg, att_trajectory* out,
                                double* last_valid_time);

#define ATT_TRAJECTORY_COLUMNS 19

ATT_API att_status att_trajectory_rows(att_trajectory traj, size_t* rows);
/* Copies one CSV row (t, R row-major, Omega, u_norm, err_r, err_omega,
 * v_tilde, w, w_dot_bound) into row[ATT_TRAJECTORY_COLUMNS]. */
ATT_API att_status att_trajectory_row(att_trajectory traj, size_t index,
                                      double* row);
ATT_API att_status att_trajectory_write_csv(att_trajectory traj,
                                            const char* path);
ATT_API att_status att_trajectory_destroy(att_trajectory traj);

/* ---- region-of-attraction sweep --------------------------------------- */

typedef enum att_outcome {
  ATT_OUTCOME_E1 = 0,
  ATT_OUTCOME_E2 = 1,
  ATT_OUTCOME_NONE = 2,
  ATT_OUTCOME_DIVERGED = 3
} att_outcome;

typedef struct att_trial {
  uint64_t seed;
  double initial_distance;
  att_outcome outcome;
  double final_err_r;
  double final_err_omega;
} att_trial;

typedef struct att_sweep_counts {
  size_t trials;
  size_t e1;
  size_t e2;
  size_t none;
  size_t diverged;
} att_sweep_counts;

/* threads = 0 uses the hardware concurrency. */
ATT_API att_status att_sweep_run(att_config cfg, size_t n_trials,
                                 unsigned threads, att_sweep* out);
ATT_API att_status att_sweep_get_counts(att_sweep sweep,
                                        att_sweep_counts* counts);
ATT_API att_status att_sweep_trial(att_sweep sweep, size_t index,
                                   att_trial* trial);
ATT_API att_status att_sweep_write_csv(att_sweep sweep, const char* path);
ATT_API att_status att_sweep_destroy(att_sweep sweep);

/* ---- verification suite ----------------------------------------------- */

typedef struct att_check_options {
  uint64_t seed;
  int flip_correction_sign; /* mutation hook */
  int override_epsilon;     /* when nonzero, use `epsilon` below */
  double epsilon;
} att_check_options;

ATT_API void att_check_options_default(att_check_options* options);

typedef void (*att_check_callback)(const char* name, int passed,
                                   const char* detail, void* user);

/* Invokes callback once per check, in order. *all_passed receives 1 iff
 * every check passed. options may be NULL for defaults. */
ATT_API att_status att_run_checks(const att_check_options* options,
                                  att_check_callback callback, void* user,
                                  int* all_passed);

/* ---- scalar diagnostics ----------------------------------------------- */

ATT_API att_status att_max_epsilon(double k_p, double k_d, double* out);
ATT_API att_status att_manifold_distance(const double* r, double* out);
ATT_API att_status att_v_tilde(const double* r, double k_e, double* out);
/* gains = {k_e, k_p, k_d, epsilon} */
ATT_API att_status att_height_w(const double* r, const double* omega,
                                const double* r0, const double* gains,
                                double* out);
ATT_API att_status att_classify(const double* r, const double* omega,
                                const double* r0, double tol,
                                att_outcome* out);

#ifdef __cplusplus
}
#endif

#endif /* ATTITUDE_ATTITUDE_H */
