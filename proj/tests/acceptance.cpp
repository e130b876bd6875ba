// Acceptance harness: thirteen release criteria, one [PASS]/[FAIL] line
// each, exit code = number of failures. Numbers quoted in the lines are
// the worst case seen for that criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "asymptotic.hpp"
#include "oracles.hpp"
#include "precoder.hpp"
#include "prox.hpp"
#include "saddle.hpp"
#include "sim.hpp"
#include "tune.hpp"

using l1p::DomainParams;
using l1p::SaddlePoint;

namespace {

int g_failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

DomainParams fig_base() {
  DomainParams p;
  p.rho = 1.0;  // replaced by calibration
  p.delta = 0.5;
  p.lambda1 = 0.0;
  p.lambda2 = 0.005;
  p.p_cap = 10.0;
  p.sigma2 = 0.25;
  return p;
}

l1p::EmpiricalReport campaign(const DomainParams& p, std::size_t n, std::size_t m,
                              int channels, int draws, std::uint64_t seed,
                              double threshold = 0.0) {
  l1p::TrialConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.params = p;
  cfg.num_channels = channels;
  cfg.num_symbol_draws = draws;
  cfg.seed = seed;
  if (threshold > 0.0) cfg.threshold = threshold;
  return l1p::run_trials(cfg);
}

// ---- 2: ridgeless closed form ----

void criterion_rzf() {
  DomainParams p;
  p.rho = 1.0;
  p.delta = 2.0;
  p.lambda1 = 0.0;
  p.lambda2 = 0.0;
  p.p_cap = 1e6;
  p.sigma2 = 0.25;
  const SaddlePoint sp = l1p::solve_saddle(p);
  const double tau_want = std::sqrt(p.rho / (p.delta - 1.0));
  const double beta_want = 2.0 * tau_want * (p.delta - 1.0);
  const bool pass =
      std::fabs(sp.tau - tau_want) <= 1e-3 && std::fabs(sp.beta - beta_want) <= 2e-3;
  report(2, "ridgeless large-cap saddle matches tau = sqrt(rho/(delta-1)), beta = 2tau(delta-1)",
         pass,
         "tau " + num(sp.tau) + " vs " + num(tau_want) + ", beta " + num(sp.beta) + " vs " +
             num(beta_want));
}

// ---- 1 + 3: saddle residuals, solve time, optimal-value identity ----

void criteria_saddle_grid() {
  const std::vector<double> rhos = {0.5, 1.0, 2.0};
  const std::vector<double> deltas = {0.25, 0.5, 1.0, 2.0};
  const std::vector<double> l1s = {0.0, 0.1, 0.5};
  const std::vector<double> l2s = {0.005, 0.1};
  const std::vector<double> caps = {1.0, 10.0};

  double worst_residual = 0.0, worst_time = 0.0, worst_identity = 0.0;
  int solves = 0;
  for (double rho : rhos)
    for (double delta : deltas)
      for (double l1 : l1s)
        for (double l2 : l2s)
          for (double cap : caps) {
            DomainParams p;
            p.rho = rho;
            p.delta = delta;
            p.lambda1 = l1;
            p.lambda2 = l2;
            p.p_cap = cap;
            p.sigma2 = 0.25;
            const auto t0 = std::chrono::steady_clock::now();
            const SaddlePoint sp = l1p::solve_saddle(p);
            const double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            ++solves;
            worst_time = std::max(worst_time, secs);
            worst_residual =
                std::max({worst_residual, sp.residual_tau, sp.residual_beta});

            const double thr = l1 * sp.tau_tilde / sp.beta;
            const double e2 = l1p::expect_prox_moment(sp.tau_tilde, thr, cap,
                                                      l1p::ProxMomentKind::kSquare);
            const double ea = l1p::expect_prox_moment(sp.tau_tilde, thr, cap,
                                                      l1p::ProxMomentKind::kAbs);
            const double rhs = 0.25 * sp.beta * sp.beta + l2 * e2 + l1 * ea;
            worst_identity = std::max(worst_identity, std::fabs(sp.psi - rhs));
          }

  report(1, "saddle residuals <= 1e-9 and each solve < 1 s over the parameter grid",
         worst_residual <= 1e-9 && worst_time < 1.0,
         std::to_string(solves) + " solves, worst residual " + num(worst_residual) +
             ", worst time " + num(worst_time) + " s");
  criterion_rzf();
  report(3, "optimal-value identity psi = beta^2/4 + l2*E[prox^2] + l1*E[|prox|]",
         worst_identity <= 1e-9, "worst gap " + num(worst_identity));
}

// ---- 4: thresholded predictions collapse to plain l1 as t_x -> 0 ----

void criterion_collapse() {
  struct Point {
    double rho, delta, l1, l2, cap, sigma2;
  };
  const std::vector<Point> pts = {{1.0, 0.5, 0.3, 0.005, 10.0, 0.25},
                                  {2.0, 1.0, 0.5, 0.1, 1.0, 1.0},
                                  {0.5, 2.0, 0.1, 0.005, 10.0, 0.25}};
  double worst = 0.0;
  for (const auto& pt : pts) {
    DomainParams p;
    p.rho = pt.rho;
    p.delta = pt.delta;
    p.lambda1 = pt.l1;
    p.lambda2 = pt.l2;
    p.p_cap = pt.cap;
    p.sigma2 = pt.sigma2;
    const SaddlePoint sp = l1p::solve_saddle(p);
    const auto plain = l1p::predict_l1(sp, p);
    const auto ts = l1p::thresholded_stats(1e-8, sp, p);
    const auto gated = l1p::predict_thresholded(ts, sp, p);
    worst = std::max(worst, std::fabs(gated.p_b - plain.p_b) / plain.p_b);
    worst = std::max(worst, std::fabs(gated.sinad_lb - plain.sinad_lb) / plain.sinad_lb);
    worst = std::max(worst, std::fabs(gated.ber - plain.ber) / plain.ber);
  }
  report(4, "thresholded (P_b, SINAD, BER) at t_x = 1e-8 match plain l1 within 1e-6",
         worst <= 1e-6, "worst relative gap " + num(worst));
}

// ---- 5-8: sparsity, power, BER, SINAD at calibrated l1 points ----

void criteria_l1_operating_points() {
  const DomainParams base = fig_base();
  double worst_kappa = 0.0, worst_pb = 0.0, worst_ber = 0.0, worst_sinad = 0.0;
  int ber_points = 0;
  const auto t0 = std::chrono::steady_clock::now();

  struct PointRun {
    DomainParams p;
    SaddlePoint sp;
    l1p::MetricReport pred;
  };
  std::vector<PointRun> points;

  for (double kappa_target : {0.4, 0.6}) {
    l1p::TuneTarget target;
    target.kappa_target = kappa_target;
    target.pb_target = 2.8;
    const auto pair = l1p::calibrate_pair(target, base);
    DomainParams p = base;
    p.lambda1 = pair.lambda1;
    p.rho = pair.rho;
    const SaddlePoint sp = l1p::solve_saddle(p);
    const auto pred = l1p::predict_l1(sp, p);
    points.push_back({p, sp, pred});

    const auto rep = campaign(p, 512, 256, 10, 1, 101);
    worst_kappa = std::max(worst_kappa, std::fabs(rep.metrics.kappa - pred.kappa));
    worst_pb = std::max(worst_pb, std::fabs(rep.metrics.p_b - pred.p_b) / pred.p_b);
  }
  const double secs_56 =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  report(5, "empirical active fraction within 0.03 of 2Q(lambda1/beta) at n = 512",
         worst_kappa <= 0.03 && secs_56 < 120.0,
         "worst gap " + num(worst_kappa) + ", " + num(secs_56) + " s");
  report(6, "empirical per-antenna power within 5% of tau^2 delta - rho", worst_pb <= 0.05,
         "worst relative gap " + num(worst_pb));

  for (const auto& pt : points) {
    const auto rep = campaign(pt.p, 512, 256, 10, 50, 202);
    if (pt.pred.ber >= 5e-3) {
      // BER agreement is only claimed where the predicted rate is resolvable
      // with 50 draws; sub-5e-3 points stay in the SINAD check.
      ++ber_points;
      const double tol = std::max(0.01, 0.25 * pt.pred.ber);
      worst_ber = std::max(worst_ber, std::fabs(rep.metrics.ber - pt.pred.ber) / tol);
    }
    worst_sinad = std::max(
        worst_sinad, std::fabs(rep.metrics.sinad_lb - pt.pred.sinad_lb) / pt.pred.sinad_lb);
  }
  report(7, "empirical BER within max(0.01, 25%) of prediction over 10 channels x 50 draws",
         ber_points >= 1 && worst_ber <= 1.0,
         std::to_string(ber_points) + " of " + std::to_string(points.size()) +
             " points in scope (predicted BER >= 5e-3), worst gap/tolerance " +
             num(worst_ber));
  report(8, "empirical SINAD lower bound within 10% of prediction", worst_sinad <= 0.10,
         "worst relative gap " + num(worst_sinad));
}

// ---- 9-10: threshold rule and thresholded-law agreement ----

void criteria_thresholded_operating_point() {
  DomainParams p = fig_base();
  p.lambda1 = 0.2;
  p.rho = l1p::calibrate_rho(p.lambda1, 2.8, p);
  const SaddlePoint sp = l1p::solve_saddle(p);
  const double t_bar = l1p::threshold_for_target(0.5, sp, p);

  const auto rep9 = campaign(p, 512, 256, 10, 1, 303, t_bar);
  report(9, "thresholding at t_bar(kappa = 0.5) leaves an active fraction within 0.03 of 0.5",
         std::fabs(rep9.metrics.kappa - 0.5) <= 0.03,
         "t_bar " + num(t_bar) + ", empirical " + num(rep9.metrics.kappa));

  const auto ts = l1p::thresholded_stats(t_bar, sp, p);
  const auto pred = l1p::predict_thresholded(ts, sp, p);
  const auto rep10 = campaign(p, 512, 256, 10, 50, 404, t_bar);
  const double ber_gap = std::fabs(rep10.metrics.ber - pred.ber);
  const double ber_tol = std::max(0.01, 0.25 * pred.ber);
  const double sinad_gap = std::fabs(rep10.metrics.sinad_lb - pred.sinad_lb) / pred.sinad_lb;
  report(10, "thresholded BER and SINAD match their predictions at the gated operating point",
         ber_gap <= ber_tol && sinad_gap <= 0.10,
         "BER gap " + num(ber_gap) + " vs tol " + num(ber_tol) + ", SINAD gap " +
             num(sinad_gap));
}

// ---- 11: W2 distances shrink from n = 128 to n = 512 ----

void criterion_w2_convergence() {
  const DomainParams base = fig_base();
  l1p::TuneTarget target;
  target.kappa_target = 0.4;
  target.pb_target = 2.8;
  const auto pair = l1p::calibrate_pair(target, base);
  DomainParams p = base;
  p.lambda1 = pair.lambda1;
  p.rho = pair.rho;

  DomainParams pt = fig_base();
  pt.lambda1 = 0.2;
  pt.rho = l1p::calibrate_rho(pt.lambda1, 2.8, pt);
  const double t_bar = l1p::threshold_for_target(0.5, l1p::solve_saddle(pt), pt);

  int wins_x = 0, wins_ep = 0, wins_em = 0, wins_tp = 0, wins_tm = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const auto small = campaign(p, 128, 64, 1, 4, seed);
    const auto large = campaign(p, 512, 256, 1, 4, seed);
    if (large.w2_x < small.w2_x) ++wins_x;
    if (large.w2_e_plus < small.w2_e_plus) ++wins_ep;
    if (large.w2_e_minus < small.w2_e_minus) ++wins_em;

    const auto tsmall = campaign(pt, 128, 64, 1, 4, seed, t_bar);
    const auto tlarge = campaign(pt, 512, 256, 1, 4, seed, t_bar);
    if (tlarge.w2_e_plus < tsmall.w2_e_plus) ++wins_tp;
    if (tlarge.w2_e_minus < tsmall.w2_e_minus) ++wins_tm;
  }
  const bool pass =
      wins_x >= 9 && wins_ep >= 9 && wins_em >= 9 && wins_tp >= 9 && wins_tm >= 9;
  report(11, "W2 to the limit laws shrinks from n = 128 to n = 512 in >= 9/10 paired seeds",
         pass,
         "wins of 10: x " + std::to_string(wins_x) + ", e+ " + std::to_string(wins_ep) +
             ", e- " + std::to_string(wins_em) + ", gated e+ " + std::to_string(wins_tp) +
             ", gated e- " + std::to_string(wins_tm));
}

// ---- 12: qualitative curve shapes ----

void criterion_shapes() {
  const DomainParams base = fig_base();

  // SINAD vs power target at fixed lambda1 and noise: interior maximum
  std::vector<double> sinads;
  const int points = 24;
  for (int i = 0; i < points; ++i) {
    const double pb = 0.3 + (9.5 - 0.3) * static_cast<double>(i) / (points - 1);
    DomainParams p = base;
    p.lambda1 = 0.3;
    p.rho = l1p::calibrate_rho(p.lambda1, pb, p);
    sinads.push_back(l1p::predict_l1(l1p::solve_saddle(p), p).sinad_lb);
  }
  int arg = 0;
  for (int i = 1; i < points; ++i)
    if (sinads[i] > sinads[arg]) arg = i;
  const bool interior = arg > 0 && arg < points - 1 && sinads[arg] > sinads.front() &&
                        sinads[arg] > sinads.back();

  // at high transmit SNR the denser calibrated configuration wins
  bool dense_wins = true;
  for (double tsnr : {30.0, 100.0}) {
    double sinad_by_kappa[2] = {0.0, 0.0};
    int slot = 0;
    for (double kappa_target : {0.4, 0.6}) {
      l1p::TuneTarget target;
      target.kappa_target = kappa_target;
      target.pb_target = 2.8;
      const auto pair = l1p::calibrate_pair(target, base);
      DomainParams p = base;
      p.lambda1 = pair.lambda1;
      p.rho = pair.rho;
      p.sigma2 = 2.8 / tsnr;
      sinad_by_kappa[slot++] = l1p::predict_l1(l1p::solve_saddle(p), p).sinad_lb;
    }
    if (!(sinad_by_kappa[1] > sinad_by_kappa[0])) dense_wins = false;
  }

  report(12, "SINAD-vs-power has an interior maximum and kappa = 0.6 wins at high tSNR",
         interior && dense_wins,
         "argmax index " + std::to_string(arg) + " of " + std::to_string(points) +
             ", dense wins: " + (dense_wins ? "yes" : "no"));
}

// ---- 13: solver certification against coordinate descent ----

void criterion_solver() {
  std::mt19937_64 gen(7);
  std::normal_distribution<double> gauss(0.0, 1.0 / std::sqrt(40.0));
  std::bernoulli_distribution coin(0.5);
  double worst_obj = 0.0, worst_kkt = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    l1p::Instance inst;
    inst.m = 20;
    inst.n = 40;
    inst.h.resize(20 * 40);
    for (auto& v : inst.h) v = gauss(gen);
    inst.symbols.resize(20);
    for (auto& s : inst.symbols) s = coin(gen) ? 1.0 : -1.0;

    DomainParams p;
    p.rho = rep % 2 ? 2.0 : 1.0;
    p.delta = 0.5;
    p.lambda1 = rep % 3 ? 0.4 : 0.1;
    p.lambda2 = rep % 4 ? 0.005 : 0.0;
    p.p_cap = rep % 5 ? 10.0 : 1.0;
    p.sigma2 = 0.25;

    const auto res = l1p::solve_l1_precoder(inst, p);
    const auto cd = oracle::cd_solve(inst, p);
    const double gap =
        std::fabs(l1p::objective(inst, res.x, p) - l1p::objective(inst, cd, p));
    worst_obj = std::max(worst_obj, gap);
    worst_kkt = std::max(worst_kkt, res.kkt_residual);
  }
  report(13, "solver objective within 1e-8 of coordinate descent, KKT residual <= 1e-9",
         worst_obj <= 1e-8 && worst_kkt <= 1e-9,
         "worst objective gap " + num(worst_obj) + ", worst KKT " + num(worst_kkt));
}

}  // namespace

int main() {
  criteria_saddle_grid();
  criterion_collapse();
  criteria_l1_operating_points();
  criteria_thresholded_operating_point();
  criterion_w2_convergence();
  criterion_shapes();
  criterion_solver();
  if (g_failures == 0)
    std::printf("all 13 criteria passed\n");
  else
    std::printf("%d criterion(s) failed\n", g_failures);
  return g_failures;
}
