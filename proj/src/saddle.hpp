#pragma once

#include "params.hpp"

namespace l1p {

// Solution of the two-scalar saddle system characterizing the large-system
// behavior of the capped l1/l2 precoder.
struct SaddlePoint {
  double tau = 0.0;        // effective noise scale
  double beta = 0.0;       // dual scale
  double tau_tilde = 0.0;  // ridge-shrunk scale 1 / (1/tau + 2*lambda2/beta)
  double psi = 0.0;        // saddle value of the scalar objective
  double residual_tau = 0.0;   // |tau^2 delta - rho - E[X^2]|
  double residual_beta = 0.0;  // |2 tau delta - 2 E[H X] - beta|
};

// Scalar objective psi(tau, beta) whose max-min defines the saddle point.
// Exposed for cross-checks; tau > 0, beta > 0.
double psi_value(double tau, double beta, const DomainParams& p);

// Inner minimization over tau at fixed beta: the unique root of
// tau^2 delta - rho = E[prox(tau~ H; lambda1 tau~ / beta)^2] inside
// [sqrt(rho/delta), sqrt((rho + p_cap)/delta)].
double inner_tau(double beta, const DomainParams& p);

// Derivative of the concave outer objective Psi(beta) = min_tau psi(tau, beta).
double psi_prime(double beta, const DomainParams& p);

// Full saddle solve. Throws DegenerateSaddle when no regularization is
// present and delta < 1.
SaddlePoint solve_saddle(const DomainParams& p);

}  // namespace l1p
