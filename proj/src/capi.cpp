#include "l1precode.h"

#include <cstring>
#include <exception>
#include <new>
#include <optional>
#include <span>
#include <string>

#include "asymptotic.hpp"
#include "errors.hpp"
#include "precoder.hpp"
#include "saddle.hpp"
#include "sim.hpp"
#include "tune.hpp"

struct l1p_saddle {
  l1p::SaddlePoint sp;
};

namespace {

thread_local std::string g_last_error;

l1p_status record(l1p_status code, const char* what) {
  g_last_error = what ? what : "";
  return code;
}

template <typename Fn>
l1p_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return L1P_OK;
  } catch (const l1p::InvalidArgument& e) {
    return record(L1P_ERR_INVALID_ARGUMENT, e.what());
  } catch (const l1p::InfeasibleTarget& e) {
    return record(L1P_ERR_INFEASIBLE_TARGET, e.what());
  } catch (const l1p::DegenerateSaddle& e) {
    return record(L1P_ERR_DEGENERATE_SADDLE, e.what());
  } catch (const l1p::NoConvergence& e) {
    return record(L1P_ERR_NO_CONVERGENCE, e.what());
  } catch (const l1p::ScalingUndefined& e) {
    return record(L1P_ERR_SCALING_UNDEFINED, e.what());
  } catch (const std::bad_alloc& e) {
    return record(L1P_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return record(L1P_ERR_INTERNAL, e.what());
  } catch (...) {
    return record(L1P_ERR_INTERNAL, "unknown error");
  }
}

l1p::DomainParams to_domain(const l1p_params* p) {
  if (p == nullptr) throw l1p::InvalidArgument("params pointer is null");
  return {p->rho, p->delta, p->lambda1, p->lambda2, p->p_cap, p->sigma2};
}

l1p::SolverConfig to_solver(const l1p_solver_opts* o) {
  if (o == nullptr) return {};
  l1p::SolverConfig cfg;
  cfg.max_iters = o->max_iters;
  cfg.tol_obj = o->tol_obj;
  cfg.tol_kkt = o->tol_kkt;
  cfg.step_rule = o->step_rule == L1P_STEP_BACKTRACKING ? l1p::StepRule::kBacktracking
                                                        : l1p::StepRule::kFixedLipschitz;
  cfg.lipschitz_hint = o->lipschitz_hint;
  return cfg;
}

void to_metrics(const l1p::MetricReport& rep, l1p_metrics* out) {
  out->p_b = rep.p_b;
  out->kappa = rep.kappa;
  out->sinad_lb = rep.sinad_lb;
  out->ber = rep.ber;
  out->scale = rep.scale;
}

const l1p::SaddlePoint& need_saddle(const l1p_saddle* sp) {
  if (sp == nullptr) throw l1p::InvalidArgument("saddle pointer is null");
  return sp->sp;
}

template <typename T>
T& need(T* ptr, const char* name) {
  if (ptr == nullptr) throw l1p::InvalidArgument(std::string(name) + " pointer is null");
  return *ptr;
}

l1p::Instance to_instance(size_t m, size_t n, const double* h, const double* symbols) {
  if (h == nullptr || symbols == nullptr)
    throw l1p::InvalidArgument("channel or symbol pointer is null");
  l1p::Instance inst;
  inst.m = m;
  inst.n = n;
  inst.h.assign(h, h + m * n);
  inst.symbols.assign(symbols, symbols + m);
  return inst;
}

}  // namespace

extern "C" {

const char* l1p_version(void) { return "0.1.0"; }

const char* l1p_last_error(void) { return g_last_error.c_str(); }

l1p_status l1p_saddle_solve(const l1p_params* params, l1p_saddle** out) {
  return guarded([&] {
    need(out, "output");
    auto holder = new l1p_saddle{l1p::solve_saddle(to_domain(params))};
    *out = holder;
  });
}

void l1p_saddle_free(l1p_saddle* sp) { delete sp; }

l1p_status l1p_saddle_info(const l1p_saddle* sp, double* tau, double* beta, double* tau_tilde,
                           double* psi, double* residual_tau, double* residual_beta) {
  return guarded([&] {
    const auto& s = need_saddle(sp);
    if (tau) *tau = s.tau;
    if (beta) *beta = s.beta;
    if (tau_tilde) *tau_tilde = s.tau_tilde;
    if (psi) *psi = s.psi;
    if (residual_tau) *residual_tau = s.residual_tau;
    if (residual_beta) *residual_beta = s.residual_beta;
  });
}

l1p_status l1p_predict(const l1p_saddle* sp, const l1p_params* params, l1p_metrics* out) {
  return guarded([&] {
    to_metrics(l1p::predict_l1(need_saddle(sp), to_domain(params)), &need(out, "output"));
  });
}

l1p_status l1p_predict_thresholded(const l1p_saddle* sp, const l1p_params* params, double t_x,
                                   l1p_metrics* out, double* theta, double* alpha_tilde) {
  return guarded([&] {
    auto p = to_domain(params);
    const auto& s = need_saddle(sp);
    auto ts = l1p::thresholded_stats(t_x, s, p);
    to_metrics(l1p::predict_thresholded(ts, s, p), &need(out, "output"));
    if (theta) *theta = ts.theta;
    if (alpha_tilde) *alpha_tilde = ts.alpha_tilde;
  });
}

l1p_status l1p_sparsity_after_threshold(const l1p_saddle* sp, const l1p_params* params,
                                        double t_x, double* kappa) {
  return guarded([&] {
    need(kappa, "output") =
        l1p::sparsity_after_threshold(t_x, need_saddle(sp), to_domain(params));
  });
}

l1p_status l1p_threshold_for_target(const l1p_saddle* sp, const l1p_params* params,
                                    double kappa_target, double* t_x) {
  return guarded([&] {
    need(t_x, "output") =
        l1p::threshold_for_target(kappa_target, need_saddle(sp), to_domain(params));
  });
}

void l1p_solver_opts_default(l1p_solver_opts* opts) {
  if (opts == nullptr) return;
  l1p::SolverConfig cfg;
  opts->max_iters = cfg.max_iters;
  opts->tol_obj = cfg.tol_obj;
  opts->tol_kkt = cfg.tol_kkt;
  opts->step_rule = L1P_STEP_FIXED_LIPSCHITZ;
  opts->lipschitz_hint = 0.0;
}

l1p_status l1p_solve_precoder(size_t m, size_t n, const double* h, const double* symbols,
                              const l1p_params* params, const l1p_solver_opts* opts,
                              double* x_out, double* objective, double* kkt, int* iterations,
                              int* converged) {
  l1p_status st = guarded([&] {
    need(x_out, "x_out");
    auto inst = to_instance(m, n, h, symbols);
    auto res = l1p::solve_l1_precoder(inst, to_domain(params), to_solver(opts));
    std::memcpy(x_out, res.x.data(), n * sizeof(double));
    if (objective) *objective = res.objective;
    if (kkt) *kkt = res.kkt_residual;
    if (iterations) *iterations = res.iterations;
    if (converged) *converged = res.converged ? 1 : 0;
    if (!res.converged)
      throw l1p::NoConvergence("precoder solve stopped above tolerance at the iteration cap");
  });
  return st;
}

l1p_status l1p_objective(size_t m, size_t n, const double* h, const double* symbols,
                         const l1p_params* params, const double* x, double* out) {
  return guarded([&] {
    need(out, "output");
    auto inst = to_instance(m, n, h, symbols);
    *out = l1p::objective(inst, std::span<const double>(x, n), to_domain(params));
  });
}

l1p_status l1p_kkt_residual(size_t m, size_t n, const double* h, const double* symbols,
                            const l1p_params* params, const double* x, double* out) {
  return guarded([&] {
    need(out, "output");
    auto inst = to_instance(m, n, h, symbols);
    *out = l1p::kkt_residual(inst, std::span<const double>(x, n), to_domain(params));
  });
}

l1p_status l1p_apply_threshold(const double* x, size_t n, double t_x, double* out) {
  return guarded([&] {
    if (x == nullptr) throw l1p::InvalidArgument("x pointer is null");
    need(out, "output");
    auto res = l1p::apply_threshold(std::span<const double>(x, n), t_x);
    std::memcpy(out, res.data(), n * sizeof(double));
  });
}

void l1p_trial_config_default(l1p_trial_config* cfg) {
  if (cfg == nullptr) return;
  l1p::TrialConfig d;
  cfg->n = d.n;
  cfg->m = d.m;
  cfg->params = {d.params.rho,     d.params.delta, d.params.lambda1,
                 d.params.lambda2, d.params.p_cap, d.params.sigma2};
  cfg->num_channels = d.num_channels;
  cfg->num_symbol_draws = d.num_symbol_draws;
  cfg->seed = d.seed;
  cfg->threshold = 0.0;
  cfg->threads = d.threads;
  cfg->ref_sample_size = d.ref_sample_size;
  l1p_solver_opts_default(&cfg->solver);
}

l1p_status l1p_run_trials(const l1p_trial_config* cfg, l1p_trial_report* out) {
  return guarded([&] {
    const auto& c = need(cfg, "config");
    auto& rep = need(out, "output");
    l1p::TrialConfig tc;
    tc.n = c.n;
    tc.m = c.m;
    tc.params = to_domain(&c.params);
    tc.num_channels = c.num_channels;
    tc.num_symbol_draws = c.num_symbol_draws;
    tc.seed = c.seed;
    if (c.threshold > 0.0) tc.threshold = c.threshold;
    tc.threads = c.threads;
    tc.ref_sample_size = c.ref_sample_size;
    tc.solver = to_solver(&c.solver);
    auto r = l1p::run_trials(tc);
    to_metrics(r.metrics, &rep.metrics);
    rep.se_p_b = r.se_p_b;
    rep.se_kappa = r.se_kappa;
    rep.se_sinad_lb = r.se_sinad_lb;
    rep.se_ber = r.se_ber;
    rep.w2_x = r.w2_x;
    rep.w2_e_plus = r.w2_e_plus;
    rep.w2_e_minus = r.w2_e_minus;
    rep.failed_solves = r.failed_solves;
    rep.total_solves = r.total_solves;
  });
}

l1p_status l1p_calibrate_rho(double lambda1, double pb_target, const l1p_params* base,
                             int mode, double t_x, double* rho_out) {
  return guarded([&] {
    need(rho_out, "output") = l1p::calibrate_rho(
        lambda1, pb_target, to_domain(base),
        mode == L1P_TUNE_THRESHOLDED ? l1p::TuneMode::kThresholded : l1p::TuneMode::kL1, t_x);
  });
}

l1p_status l1p_calibrate_pair(double kappa_target, double pb_target, const l1p_params* base,
                              int mode, double t_x, double* lambda1_out, double* rho_out) {
  return guarded([&] {
    l1p::TuneTarget target;
    target.kappa_target = kappa_target;
    target.pb_target = pb_target;
    target.mode =
        mode == L1P_TUNE_THRESHOLDED ? l1p::TuneMode::kThresholded : l1p::TuneMode::kL1;
    if (t_x > 0.0) target.t_x = t_x;
    auto pair = l1p::calibrate_pair(target, to_domain(base));
    need(lambda1_out, "lambda1_out") = pair.lambda1;
    need(rho_out, "rho_out") = pair.rho;
  });
}

l1p_status l1p_optimal_threshold(double kappa_target, double pb_target,
                                 const l1p_params* base, int grid_size, double* t_x_out,
                                 double* lambda1_out, double* rho_out, double* sinad_out) {
  return guarded([&] {
    l1p::TuneTarget target;
    target.kappa_target = kappa_target;
    target.pb_target = pb_target;
    target.mode = l1p::TuneMode::kThresholded;
    auto choice = l1p::optimal_threshold(target, to_domain(base), grid_size);
    need(t_x_out, "t_x_out") = choice.t_x;
    if (lambda1_out) *lambda1_out = choice.lambda1;
    if (rho_out) *rho_out = choice.rho;
    if (sinad_out) *sinad_out = choice.sinad_lb;
  });
}

}  // extern "C"
