#include "asymptotic.hpp"

#include <cmath>

#include "errors.hpp"
#include "gaussian.hpp"
#include "prox.hpp"

namespace l1p {

namespace {

double prox_threshold(const SaddlePoint& sp, const DomainParams& p) {
  return p.lambda1 * sp.tau_tilde / sp.beta;
}

void check_saddle(const SaddlePoint& sp) {
  if (!(sp.tau > 0.0) || !(sp.beta > 0.0) || !(sp.tau_tilde > 0.0))
    throw InvalidArgument("predictor: saddle point is not solved");
}

}  // namespace

MetricReport predict_l1(const SaddlePoint& sp, const DomainParams& p) {
  validate(p);
  check_saddle(sp);
  double two_td = 2.0 * sp.tau * p.delta;
  if (!(two_td - sp.beta > 0.0))
    throw ScalingUndefined("predict_l1: decode gain denominator 2 tau delta - beta is not positive");

  MetricReport r;
  r.source = MetricSource::kPredictedL1;
  r.p_b = sp.tau * sp.tau * p.delta - p.rho;
  r.kappa = 2.0 * q_func(p.lambda1 / sp.beta);
  r.scale = two_td / (std::sqrt(p.rho) * (two_td - sp.beta));
  double signal = 1.0 - sp.beta / two_td;
  double distortion = 0.25 * sp.beta * sp.beta * r.p_b / (sp.tau * sp.tau * p.delta * p.delta);
  double denom = p.sigma2 + distortion;
  if (!(denom > 0.0))
    throw ScalingUndefined("predict_l1: zero noise and zero distortion leave SINAD undefined");
  r.sinad_lb = p.rho * signal * signal / denom;
  r.ber = q_func(std::sqrt(r.sinad_lb));
  return r;
}

double sparsity_after_threshold(double t_x, const SaddlePoint& sp, const DomainParams& p) {
  validate(p);
  check_saddle(sp);
  if (!(t_x > 0.0) || !(t_x < std::sqrt(p.p_cap)))
    throw InvalidArgument("sparsity_after_threshold: t_x must lie in (0, sqrt(p_cap))");
  return expect_prox_moment(sp.tau_tilde, prox_threshold(sp, p), p.p_cap,
                            ProxMomentKind::kIndMass, t_x);
}

double threshold_for_target(double kappa_target, const SaddlePoint& sp, const DomainParams& p) {
  validate(p);
  check_saddle(sp);
  if (!(kappa_target > 0.0 && kappa_target <= 1.0))
    throw InvalidArgument("threshold_for_target: kappa_target must be in (0, 1]");
  double ratio = p.lambda1 / sp.beta;
  double ceiling = 2.0 * q_func(ratio);
  if (kappa_target > ceiling)
    throw InfeasibleTarget("threshold_for_target: target exceeds the unthresholded active fraction");
  double t = (q_inv(0.5 * kappa_target) - ratio) * sp.tau_tilde;
  if (t < 0.0) t = 0.0;  // equality case up to rounding
  if (t >= std::sqrt(p.p_cap))
    throw InfeasibleTarget("threshold_for_target: required threshold reaches the power cap");
  return t;
}

ThresholdStats thresholded_stats(double t_x, const SaddlePoint& sp, const DomainParams& p) {
  validate(p);
  check_saddle(sp);
  if (!(t_x > 0.0) || !(t_x < std::sqrt(p.p_cap)))
    throw InvalidArgument("thresholded_stats: t_x must lie in (0, sqrt(p_cap))");
  double b = prox_threshold(sp, p);
  ThresholdStats ts;
  ts.t_x = t_x;
  double cross =
      expect_prox_moment(sp.tau_tilde, b, p.p_cap, ProxMomentKind::kIndHCross, t_x);
  ts.theta = -cross / (sp.tau * p.delta);
  ts.alpha_tilde = std::sqrt(
      expect_prox_moment(sp.tau_tilde, b, p.p_cap, ProxMomentKind::kIndSquare, t_x));
  return ts;
}

MetricReport predict_thresholded(const ThresholdStats& ts, const SaddlePoint& sp,
                                 const DomainParams& p) {
  validate(p);
  check_saddle(sp);
  if (!(ts.theta < 0.0))
    throw ScalingUndefined("predict_thresholded: decode gain needs a negative correlation term");

  MetricReport r;
  r.source = MetricSource::kPredictedThresholded;
  double a2 = ts.alpha_tilde * ts.alpha_tilde;
  r.p_b = a2;
  r.kappa = sparsity_after_threshold(ts.t_x, sp, p);
  r.scale = -1.0 / (std::sqrt(p.rho) * ts.theta);
  double spread = sp.tau * sp.tau * p.delta - p.rho;
  double denom = a2 + ts.theta * ts.theta * spread + 2.0 * a2 * ts.theta + p.sigma2;
  if (!(denom > 0.0))
    throw ScalingUndefined("predict_thresholded: SINAD denominator is not positive");
  r.sinad_lb = p.rho * ts.theta * ts.theta / denom;
  r.ber = q_func(std::sqrt(r.sinad_lb));
  return r;
}

ReceivedLaw received_law_l1(const SaddlePoint& sp, const DomainParams& p) {
  validate(p);
  check_saddle(sp);
  double two_td = 2.0 * sp.tau * p.delta;
  double spread = sp.tau * sp.tau * p.delta - p.rho;
  ReceivedLaw law;
  law.gain_g = sp.beta * std::sqrt(std::max(spread, 0.0)) / two_td;
  law.gain_s = std::sqrt(p.rho) * (two_td - sp.beta) / two_td;
  return law;
}

ReceivedLaw received_law_thresholded(const ThresholdStats& ts, const SaddlePoint& sp,
                                     const DomainParams& p) {
  validate(p);
  check_saddle(sp);
  double a2 = ts.alpha_tilde * ts.alpha_tilde;
  double spread = sp.tau * sp.tau * p.delta - p.rho;
  double var = a2 * (1.0 + 2.0 * ts.theta) + ts.theta * ts.theta * spread;
  if (var < 0.0) {
    if (var < -1e-10)
      throw ScalingUndefined("received_law_thresholded: negative distortion variance");
    var = 0.0;
  }
  ReceivedLaw law;
  law.gain_g = std::sqrt(var);
  law.gain_s = -std::sqrt(p.rho) * ts.theta;
  return law;
}

}  // namespace l1p
