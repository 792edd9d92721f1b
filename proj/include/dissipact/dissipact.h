/* Public C interface of the dissipact shared library.
 *
 * All functions return a dsp_status; DSP_OK is 0. On any failure the
 * thread-local message behind dsp_last_error() is updated. Objects returned
 * through out-parameters are owned by the caller and released with the
 * matching _free function.
 */
#ifndef DISSIPACT_DISSIPACT_H
#define DISSIPACT_DISSIPACT_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dsp_status {
  DSP_OK = 0,
  DSP_ERR_DIMENSION_MISMATCH = 1,
  DSP_ERR_STRUCTURE_VIOLATION = 2,
  DSP_ERR_NEWTON_DIVERGENCE = 3,
  DSP_ERR_SINGULAR_JACOBIAN = 4,
  DSP_ERR_ILLEGAL_KIND = 5,
  DSP_ERR_NON_QUADRATIC_ENERGY = 6,
  DSP_ERR_RANK_DEFICIENT_BASIS = 7,
  DSP_ERR_SINGULAR_REDUCED_MASS = 8,
  DSP_ERR_INCONSISTENT_INITIAL_DATA = 9,
  DSP_ERR_TRAJECTORY_MISMATCH = 10,
  DSP_ERR_NO_ALGEBRAIC_ROWS = 11,
  DSP_ERR_UNKNOWN_MODEL = 12,
  DSP_ERR_INVALID_PARAMS = 13,
  DSP_ERR_PARSE = 14,
  DSP_ERR_UNKNOWN_KEY = 15,
  DSP_ERR_INVALID_VALUE = 16,
  DSP_ERR_IO = 17,
  DSP_ERR_INVALID_ARGUMENT = 18, /* bad pointer/handle passed to the API */
  DSP_ERR_INTERNAL = 19
} dsp_status;

/* Message of the most recent failure on this thread; never NULL. */
const char* dsp_last_error(void);

/* ---- model zoo ---- */

int dsp_zoo_count(void);
/* Name of the i-th model, or NULL when out of range. */
const char* dsp_zoo_name(int index);
/* Writes a human-readable description (truncated to cap-1 chars). */
dsp_status dsp_zoo_describe(const char* name, char* buf, size_t cap);

/* ---- models ---- */

typedef struct dsp_model dsp_model;

/* Builds a zoo model. keys/values carry nparams scalar parameters; grid = 0
 * keeps the model's default spatial resolution. */
dsp_status dsp_model_from_zoo(const char* name, const char* const* keys,
                              const double* values, int nparams, int grid,
                              dsp_model** out);
/* Loads a system file (see the file-format section of the README). */
dsp_status dsp_model_load(const char* path, dsp_model** out);
/* Writes the model back out as a system file. */
dsp_status dsp_model_save(const dsp_model* model, const char* path);
void dsp_model_free(dsp_model* model);

dsp_status dsp_model_dims(const dsp_model* model, int* n1, int* n2, int* n3,
                          int* m);
/* Structure report: skew/symmetry defects, smallest eigenvalue of R, and
 * whether the checks passed (any out-pointer may be NULL). */
dsp_status dsp_model_validate(const dsp_model* model, double* skew_defect,
                              double* sym_defect, double* min_eig_r,
                              int* passed);
/* Copies the (consistent) initial state into buf (length n1+n2+n3). */
dsp_status dsp_model_initial_state(const dsp_model* model, double* buf,
                                   int len);

/* ---- integration ---- */

typedef struct dsp_run_options {
  double t0;
  double t_end;
  double tau;     /* <= 0 selects the model's default step size */
  int scheme;     /* 0 midpoint, 1 discrete gradient */
  double abs_tol;
  double rel_tol;
  int max_iters;
} dsp_run_options;

void dsp_run_options_init(dsp_run_options* opts);

typedef struct dsp_trajectory dsp_trajectory;

dsp_status dsp_integrate(const dsp_model* model, const dsp_run_options* opts,
                         dsp_trajectory** out);
void dsp_trajectory_free(dsp_trajectory* traj);

/* Number of completed steps N; states/energies have N+1 entries. */
int dsp_trajectory_steps(const dsp_trajectory* traj);
double dsp_trajectory_time(const dsp_trajectory* traj, int level);
double dsp_trajectory_energy(const dsp_trajectory* traj, int level);
dsp_status dsp_trajectory_state(const dsp_trajectory* traj, int level,
                                double* buf, int len);
/* Dissipation certificate for a trajectory produced from this model. */
dsp_status dsp_trajectory_dissipation(const dsp_model* model,
                                      const dsp_trajectory* traj,
                                      double* max_violation,
                                      double* balance_max_residual,
                                      int* monotone_when_unforced);
/* Deterministic CSV artifacts: trajectory.csv, output.csv, energy.csv. */
dsp_status dsp_trajectory_write_csv(const dsp_trajectory* traj,
                                    const char* directory);

/* ---- configuration-driven runs ---- */

typedef struct dsp_overrides {
  const char* out_dir; /* NULL keeps the configured value */
  const char* scheme;  /* "midpoint" / "discrete-gradient", NULL keeps */
  const char* check;   /* "none" / "dissipation" / "full", NULL keeps */
  double tau;          /* > 0 overrides */
  double t_end;        /* used when has_t_end */
  int has_t_end;
  unsigned long seed;  /* used when has_seed */
  int has_seed;
} dsp_overrides;

void dsp_overrides_init(dsp_overrides* ov);

/* Runs a config file end to end. exit_code follows the CLI contract:
 * 0 pass, 1 runtime error, 2 requested check failed. message (may be NULL)
 * receives the outcome text, truncated to msg_cap-1 chars. Returns DSP_OK
 * whenever the run could be attempted, even if exit_code is nonzero. */
dsp_status dsp_run_config_file(const char* path, const dsp_overrides* ov,
                               int* exit_code, char* message, size_t msg_cap);

/* Validates a system file under the same exit-code contract. */
dsp_status dsp_validate_file(const char* path, int* exit_code, char* message,
                             size_t msg_cap);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DISSIPACT_DISSIPACT_H */
