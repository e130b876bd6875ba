#include "saddle.hpp"

#include <cmath>

#include "errors.hpp"
#include "gaussian.hpp"
#include "prox.hpp"
#include "rootfind.hpp"

namespace l1p {

namespace {

struct Scales {
  double tau_tilde;
  double threshold;  // lambda1 * tau_tilde / beta
};

Scales shrink_scales(double tau, double beta, const DomainParams& p) {
  double tt = tau * beta / (beta + 2.0 * p.lambda2 * tau);
  return {tt, p.lambda1 * tt / beta};
}

constexpr double kInnerFTol = 5e-14;
constexpr double kOuterFTol = 5e-13;

double inner_gap(double tau, double beta, const DomainParams& p) {
  Scales s = shrink_scales(tau, beta, p);
  double ex2 = expect_prox_moment(s.tau_tilde, s.threshold, p.p_cap, ProxMomentKind::kSquare);
  return tau * tau * p.delta - p.rho - ex2;
}

}  // namespace

double inner_tau(double beta, const DomainParams& p) {
  validate(p);
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw InvalidArgument("inner_tau: beta must be finite and > 0");
  double lo = std::sqrt(p.rho / p.delta);
  double hi = std::sqrt((p.rho + p.p_cap) / p.delta);
  double flo = inner_gap(lo, beta, p);  // = -E[X^2] <= 0
  double fhi = inner_gap(hi, beta, p);  // = p_cap - E[X^2] >= 0
  // lo^2 delta - rho is a rounding-scale residue of zero; when the prox is
  // effectively dead the root sits at the endpoint itself.
  const double slack = 1e-12 * (1.0 + p.rho + p.p_cap);
  if (flo > 0.0) {
    if (flo <= slack) return lo;
    throw NoConvergence("inner_tau: bracket lost its sign change");
  }
  if (fhi < 0.0) {
    if (fhi >= -slack) return hi;
    throw NoConvergence("inner_tau: bracket lost its sign change");
  }
  return detail::bracketed_root([&](double t) { return inner_gap(t, beta, p); }, lo, hi, flo,
                                fhi, 1e-15, kInnerFTol, 300);
}

double psi_prime(double beta, const DomainParams& p) {
  double tau = inner_tau(beta, p);
  Scales s = shrink_scales(tau, beta, p);
  double cross = expect_prox_moment(s.tau_tilde, s.threshold, p.p_cap, ProxMomentKind::kHCross);
  return tau * p.delta - cross - 0.5 * beta;
}

double psi_value(double tau, double beta, const DomainParams& p) {
  validate(p);
  if (!(tau > 0.0) || !(beta > 0.0))
    throw InvalidArgument("psi_value: tau and beta must be > 0");
  Scales s = shrink_scales(tau, beta, p);
  double env = expect_moreau_env(s.tau_tilde, s.threshold, p.p_cap);
  return 0.5 * beta * tau * p.delta - 0.25 * beta * beta + 0.5 * beta * p.rho / tau -
         0.5 * beta * s.tau_tilde + beta / s.tau_tilde * env;
}

SaddlePoint solve_saddle(const DomainParams& p) {
  validate(p);
  if (!saddle_admissible(p))
    throw DegenerateSaddle(
        "saddle point undefined: lambda1 = lambda2 = 0 with delta < 1 has no "
        "interior solution");

  // The stationarity condition gives beta = 2 tau delta - 2 E[H X] with
  // 0 <= E[H X] and tau <= sqrt((rho + p_cap)/delta), so the root of the
  // concave objective's derivative lies below 2 sqrt(delta (rho + p_cap)).
  double hi = 2.0 * std::sqrt(p.delta * (p.rho + p.p_cap)) + 1.0;
  double fhi = psi_prime(hi, p);
  double lo = 1e-12 * hi;
  double flo = psi_prime(lo, p);
  int widen = 0;
  while (flo <= 0.0 && widen++ < 40) {
    lo *= 1e-3;
    if (lo < 1e-280) break;
    flo = psi_prime(lo, p);
  }
  if (flo <= 0.0 || fhi >= 0.0)
    throw NoConvergence("solve_saddle: could not bracket the outer stationarity condition");

  double beta = detail::bracketed_root([&](double b) { return psi_prime(b, p); }, lo, hi, flo,
                                       fhi, 1e-15, kOuterFTol, 300);

  SaddlePoint sp;
  sp.beta = beta;
  sp.tau = inner_tau(beta, p);
  Scales s = shrink_scales(sp.tau, beta, p);
  sp.tau_tilde = s.tau_tilde;
  double ex2 = expect_prox_moment(s.tau_tilde, s.threshold, p.p_cap, ProxMomentKind::kSquare);
  double cross = expect_prox_moment(s.tau_tilde, s.threshold, p.p_cap, ProxMomentKind::kHCross);
  sp.residual_tau = std::abs(sp.tau * sp.tau * p.delta - p.rho - ex2);
  sp.residual_beta = std::abs(2.0 * sp.tau * p.delta - 2.0 * cross - beta);
  sp.psi = psi_value(sp.tau, beta, p);
  return sp;
}

}  // namespace l1p
