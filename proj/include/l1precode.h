/* Public C interface of libl1precode: asymptotic analysis, finite-size
 * solving, Monte Carlo verification, and calibration for power-capped
 * sparse downlink precoders.
 *
 * Every function returns an l1p_status; outputs are written through
 * pointers only on L1P_OK. On failure, l1p_last_error() returns a
 * thread-local description of what went wrong.
 */
#ifndef L1PRECODE_H
#define L1PRECODE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define L1P_API __declspec(dllexport)
#else
#define L1P_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum l1p_status {
  L1P_OK = 0,
  L1P_ERR_INVALID_ARGUMENT = 2,
  L1P_ERR_INFEASIBLE_TARGET = 3,
  L1P_ERR_DEGENERATE_SADDLE = 4,
  L1P_ERR_NO_CONVERGENCE = 5,
  L1P_ERR_SCALING_UNDEFINED = 6,
  L1P_ERR_INTERNAL = 7
} l1p_status;

/* Scalar problem parameters. delta is the user-to-antenna ratio m/n. */
typedef struct l1p_params {
  double rho;
  double delta;
  double lambda1;
  double lambda2;
  double p_cap;
  double sigma2;
} l1p_params;

typedef struct l1p_metrics {
  double p_b;      /* per-antenna transmit power */
  double kappa;    /* active-antenna fraction */
  double sinad_lb; /* linear SINAD lower bound */
  double ber;      /* BPSK bit error rate */
  double scale;    /* receiver decode gain */
} l1p_metrics;

L1P_API const char* l1p_version(void);
L1P_API const char* l1p_last_error(void);

/* ---- scalar saddle point ---- */

typedef struct l1p_saddle l1p_saddle; /* opaque */

L1P_API l1p_status l1p_saddle_solve(const l1p_params* params, l1p_saddle** out);
L1P_API void l1p_saddle_free(l1p_saddle* sp);
L1P_API l1p_status l1p_saddle_info(const l1p_saddle* sp, double* tau, double* beta,
                                   double* tau_tilde, double* psi, double* residual_tau,
                                   double* residual_beta);

/* ---- asymptotic predictions ---- */

L1P_API l1p_status l1p_predict(const l1p_saddle* sp, const l1p_params* params,
                               l1p_metrics* out);
/* theta/alpha_tilde may be NULL when not needed. */
L1P_API l1p_status l1p_predict_thresholded(const l1p_saddle* sp, const l1p_params* params,
                                           double t_x, l1p_metrics* out, double* theta,
                                           double* alpha_tilde);
L1P_API l1p_status l1p_sparsity_after_threshold(const l1p_saddle* sp,
                                                const l1p_params* params, double t_x,
                                                double* kappa);
L1P_API l1p_status l1p_threshold_for_target(const l1p_saddle* sp, const l1p_params* params,
                                            double kappa_target, double* t_x);

/* ---- finite-size precoder ---- */

typedef enum l1p_step_rule { L1P_STEP_FIXED_LIPSCHITZ = 0, L1P_STEP_BACKTRACKING = 1 } l1p_step_rule;

typedef struct l1p_solver_opts {
  int max_iters;
  double tol_obj;
  double tol_kkt;
  int step_rule;         /* l1p_step_rule */
  double lipschitz_hint; /* 0 = estimate ||H||_2 internally */
} l1p_solver_opts;

L1P_API void l1p_solver_opts_default(l1p_solver_opts* opts);

/* h is m x n row-major, symbols has length m, x_out has length n.
 * objective/kkt/iterations/converged may be NULL. Returns
 * L1P_ERR_NO_CONVERGENCE (with x_out still filled) when the iteration
 * budget runs out above tolerance. */
L1P_API l1p_status l1p_solve_precoder(size_t m, size_t n, const double* h,
                                      const double* symbols, const l1p_params* params,
                                      const l1p_solver_opts* opts, double* x_out,
                                      double* objective, double* kkt, int* iterations,
                                      int* converged);
L1P_API l1p_status l1p_objective(size_t m, size_t n, const double* h, const double* symbols,
                                 const l1p_params* params, const double* x, double* out);
L1P_API l1p_status l1p_kkt_residual(size_t m, size_t n, const double* h,
                                    const double* symbols, const l1p_params* params,
                                    const double* x, double* out);
L1P_API l1p_status l1p_apply_threshold(const double* x, size_t n, double t_x, double* out);

/* ---- Monte Carlo trials ---- */

typedef struct l1p_trial_config {
  size_t n;
  size_t m; /* delta is forced to m/n */
  l1p_params params;
  int num_channels;
  int num_symbol_draws;
  uint64_t seed;
  double threshold; /* t_x; <= 0 means plain l1 mode */
  int threads;
  size_t ref_sample_size;
  l1p_solver_opts solver;
} l1p_trial_config;

typedef struct l1p_trial_report {
  l1p_metrics metrics;
  double se_p_b, se_kappa, se_sinad_lb, se_ber;
  double w2_x;
  double w2_e_plus, w2_e_minus;
  int failed_solves;
  int total_solves;
} l1p_trial_report;

L1P_API void l1p_trial_config_default(l1p_trial_config* cfg);
L1P_API l1p_status l1p_run_trials(const l1p_trial_config* cfg, l1p_trial_report* out);

/* ---- calibration ---- */

typedef enum l1p_tune_mode { L1P_TUNE_L1 = 0, L1P_TUNE_THRESHOLDED = 1 } l1p_tune_mode;

L1P_API l1p_status l1p_calibrate_rho(double lambda1, double pb_target,
                                     const l1p_params* base, int mode, double t_x,
                                     double* rho_out);
L1P_API l1p_status l1p_calibrate_pair(double kappa_target, double pb_target,
                                      const l1p_params* base, int mode, double t_x,
                                      double* lambda1_out, double* rho_out);
L1P_API l1p_status l1p_optimal_threshold(double kappa_target, double pb_target,
                                         const l1p_params* base, int grid_size,
                                         double* t_x_out, double* lambda1_out,
                                         double* rho_out, double* sinad_out);

#ifdef __cplusplus
}
#endif

#endif /* L1PRECODE_H */
