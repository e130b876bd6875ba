#include "tune.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "errors.hpp"
#include "gaussian.hpp"
#include "rootfind.hpp"
#include "saddle.hpp"

namespace l1p {

namespace {

constexpr double kRhoFloor = 1e-6;
constexpr double kRhoCeiling = 1e6;

double predicted_pb(double lambda1, double rho, const DomainParams& base, TuneMode mode,
                    double t_x) {
  DomainParams p = base;
  p.lambda1 = lambda1;
  p.rho = rho;
  SaddlePoint sp = solve_saddle(p);
  if (mode == TuneMode::kL1) return sp.tau * sp.tau * p.delta - p.rho;
  ThresholdStats ts = thresholded_stats(t_x, sp, p);
  return ts.alpha_tilde * ts.alpha_tilde;
}

double predicted_kappa(double lambda1, double rho, const DomainParams& base, TuneMode mode,
                       double t_x) {
  DomainParams p = base;
  p.lambda1 = lambda1;
  p.rho = rho;
  SaddlePoint sp = solve_saddle(p);
  if (mode == TuneMode::kL1) return 2.0 * q_func(p.lambda1 / sp.beta);
  return sparsity_after_threshold(t_x, sp, p);
}

// Golden-section minimizer of |f| on [lo, hi]; used only when the
// three-point monotonicity probe fails.
double golden_min_abs(const std::function<double(double)>& f, double lo, double hi) {
  const double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = std::abs(f(c)), fd = std::abs(f(d));
  for (int i = 0; i < 120 && (b - a) > 1e-12 * (1.0 + std::abs(b)); ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = std::abs(f(c));
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = std::abs(f(d));
    }
  }
  return fc < fd ? c : d;
}

}  // namespace

double calibrate_rho(double lambda1, double pb_target, const DomainParams& base, TuneMode mode,
                     double t_x) {
  if (!(lambda1 >= 0.0)) throw InvalidArgument("calibrate_rho: lambda1 must be >= 0");
  if (!(pb_target > 0.0)) throw InvalidArgument("calibrate_rho: pb_target must be > 0");
  if (!(pb_target < base.p_cap))
    throw InvalidArgument("calibrate_rho: pb_target must be below the power cap");
  if (mode == TuneMode::kThresholded && !(t_x > 0.0))
    throw InvalidArgument("calibrate_rho: thresholded mode needs t_x > 0");

  auto residual = [&](double rho) {
    return predicted_pb(lambda1, rho, base, mode, t_x) - pb_target;
  };

  double lo = kRhoFloor;
  double flo = residual(lo);
  if (flo > 0.0)
    throw InfeasibleTarget("calibrate_rho: pb_target below the reachable range");
  double hi = std::max(1.0, 2.0 * pb_target);
  double fhi = residual(hi);
  while (fhi < 0.0 && hi < kRhoCeiling) {
    hi = std::min(hi * 4.0, kRhoCeiling);
    fhi = residual(hi);
  }
  if (fhi < 0.0)
    throw InfeasibleTarget("calibrate_rho: no sign change up to rho = 1e6");

  // The bisection below assumes the power prediction grows with rho;
  // verify on three points and fall back to a golden-section scan of the
  // |residual| if the probe fails.
  double mid = std::sqrt(lo * hi);
  double fmid = residual(mid);
  if (!(flo <= fmid + 1e-12 && fmid <= fhi + 1e-12)) {
    std::function<double(double)> fn = residual;
    double best = golden_min_abs(fn, lo, hi);
    if (std::abs(residual(best)) > 1e-8)
      throw InfeasibleTarget("calibrate_rho: non-monotone power response and no root found");
    return best;
  }

  return detail::bracketed_root(residual, lo, hi, flo, fhi, 1e-14, 1e-9, 200);
}

CalibratedPair calibrate_pair(const TuneTarget& target, const DomainParams& base) {
  if (!(target.kappa_target > 0.0 && target.kappa_target <= 1.0))
    throw InvalidArgument("calibrate_pair: kappa_target must be in (0, 1]");
  const TuneMode mode = target.mode;
  const double t_x = target.t_x.value_or(0.0);
  if (mode == TuneMode::kThresholded && !(t_x > 0.0))
    throw InvalidArgument("calibrate_pair: thresholded mode needs t_x > 0");

  auto kappa_residual = [&](double lambda1) {
    double rho = calibrate_rho(lambda1, target.pb_target, base, mode, t_x);
    return predicted_kappa(lambda1, rho, base, mode, t_x) - target.kappa_target;
  };

  double lo = 0.0;
  double flo = kappa_residual(lo);
  if (flo < -1e-12)
    throw InfeasibleTarget(
        "calibrate_pair: kappa_target above the active fraction reachable at lambda1 = 0");

  double lambda1;
  if (flo <= 0.0) {
    lambda1 = 0.0;  // kappa ceiling hit exactly (e.g. kappa_target = 1 in l1 mode)
  } else {
    double hi = 1.0;
    double fhi = kappa_residual(hi);
    int expand = 0;
    while (fhi > 0.0 && expand++ < 24) {
      hi *= 4.0;
      fhi = kappa_residual(hi);
    }
    if (fhi > 0.0)
      throw InfeasibleTarget("calibrate_pair: no lambda1 bracket for the sparsity target");
    lambda1 = detail::bracketed_root(kappa_residual, lo, hi, flo, fhi, 1e-13, 1e-9, 200);
  }

  CalibratedPair out;
  out.lambda1 = lambda1;
  out.rho = calibrate_rho(lambda1, target.pb_target, base, mode, t_x);
  out.kappa_residual =
      predicted_kappa(lambda1, out.rho, base, mode, t_x) - target.kappa_target;
  out.pb_residual = predicted_pb(lambda1, out.rho, base, mode, t_x) - target.pb_target;
  if (std::abs(out.kappa_residual) > 1e-7 || std::abs(out.pb_residual) > 1e-7)
    throw NoConvergence("calibrate_pair: residuals " + std::to_string(out.kappa_residual) +
                        ", " + std::to_string(out.pb_residual) + " exceed 1e-7");
  return out;
}

ThresholdChoice optimal_threshold(const TuneTarget& target, const DomainParams& base,
                                  int grid_size) {
  if (grid_size < 2) throw InvalidArgument("optimal_threshold: grid_size must be >= 2");
  const double root_p = std::sqrt(base.p_cap);
  const double lo = 0.01 * root_p;
  const double hi = 0.99 * root_p;

  ThresholdChoice best;
  bool found = false;
  for (int i = 0; i < grid_size; ++i) {
    double t = lo + (hi - lo) * static_cast<double>(i) / (grid_size - 1);
    TuneTarget point = target;
    point.mode = TuneMode::kThresholded;
    point.t_x = t;
    CalibratedPair pair;
    try {
      pair = calibrate_pair(point, base);
    } catch (const InfeasibleTarget&) {
      continue;
    }
    DomainParams p = base;
    p.lambda1 = pair.lambda1;
    p.rho = pair.rho;
    SaddlePoint sp = solve_saddle(p);
    MetricReport rep = predict_thresholded(thresholded_stats(t, sp, p), sp, p);
    if (!found || rep.sinad_lb > best.sinad_lb) {
      best = {t, pair.lambda1, pair.rho, rep.sinad_lb};
      found = true;
    }
  }
  if (!found)
    throw InfeasibleTarget("optimal_threshold: every grid point is infeasible");
  return best;
}

}  // namespace l1p
