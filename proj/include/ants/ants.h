/* C interface to the adaptive-entropy tree-search library.
 *
 * Every function returns a status code (ANTS_OK, ANTS_ERR_RUNTIME,
 * ANTS_ERR_CONFIG) except the handle constructor/destructor; after any
 * failure, ants_last_error() describes it.  Configs are JSON object strings;
 * the accepted keys per entry point are documented in the README.
 */
#ifndef ANTS_ANTS_H
#define ANTS_ANTS_H

#ifdef __cplusplus
extern "C" {
#endif

enum {
  ANTS_OK = 0,
  ANTS_ERR_RUNTIME = 1, /* execution failure: I/O, unreadable input, ... */
  ANTS_ERR_CONFIG = 2   /* invalid configuration or argument */
};

/* Message for the most recent failure on the calling thread; empty after a
 * success.  The pointer stays valid until the thread's next library call. */
const char* ants_last_error(void);

/* ---- scalar surface -----------------------------------------------------
 * kind is "shannon" or "tsallis2".  q/probs point at n doubles. */

/* Entropy-regularized value of a score row: max_p p.q + tau * H(p). */
int ants_soft_value(const double* q, int n, double tau, const char* kind, double* out);

/* The maximizing policy of the regularized value; writes n doubles to out. */
int ants_soft_policy(const double* q, int n, double tau, const char* kind, double* out);

/* H(probs) for a probability row. */
int ants_entropy(const double* probs, int n, const char* kind, double* out);

/* Entropy of the uniform distribution over n actions. */
int ants_max_entropy(int n, const char* kind, double* out);

/* ---- planner handle -----------------------------------------------------
 * Config keys: algo, env, n_passes, depth_limit, gamma, seed.  Returns NULL
 * on failure (see ants_last_error). */
typedef struct ants_planner ants_planner;

ants_planner* ants_planner_create(const char* json_config);

/* Runs one planning step from `state`; writes the chosen action. */
int ants_planner_plan(ants_planner* planner, int state, int* action_out);

/* Operating temperature after the last planning step. */
int ants_planner_tau(const ants_planner* planner, double* tau_out);

/* Drops the search tree; the adapted temperature persists. */
int ants_planner_reset(ants_planner* planner);

void ants_planner_destroy(ants_planner* planner);

/* ---- experiment drivers -------------------------------------------------
 * Each runs one workload and writes CSV files into out_dir (created if
 * missing).  The return value doubles as the process exit-code contract. */

/* Planning episodes; writes episodes.csv and, when trace_temperature is set,
 * temperature_trace.csv. */
int ants_run_plan(const char* json_config, const char* out_dir);

/* Planning-learning loop; writes learning_curve.csv. */
int ants_run_loop(const char* json_config, const char* out_dir);

/* Softmax-bandit trials; writes bandit.csv. */
int ants_run_bandit(const char* json_config, const char* out_dir);

/* Hyperparameter-robustness sweep; writes sweep.csv. */
int ants_run_sweep(const char* json_config, const char* out_dir);

/* Aggregates episode CSVs; writes report.csv. */
int ants_run_report(const char* json_config, const char* out_dir);

#ifdef __cplusplus
}
#endif

#endif /* ANTS_ANTS_H */
