#pragma once

namespace l1p {

// Standard normal density.
double normal_pdf(double x);

// Upper tail Q(x) = P(N(0,1) > x).
double q_func(double x);

// Inverse of q_func on (0, 1). Accurate down to p ~ 1e-300.
double q_inv(double p);

// Integral of the standard normal density over [u, v], u <= v.
double gauss_mass(double u, double v);

}  // namespace l1p
