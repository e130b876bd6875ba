#pragma once

#include <functional>
#include <vector>

#include "params.hpp"
#include "precoder.hpp"
#include "prox.hpp"

// Slow, independent reference implementations used only by tests. None of
// them share code paths with the library's closed forms.
namespace oracle {

// E[f(H)] for H ~ N(0,1) by adaptive Simpson quadrature with explicit
// breakpoints (integrand need not be smooth across them).
double gauss_expect(const std::function<double(double)>& f,
                    const std::vector<double>& breakpoints);

// Quadrature versions of the library's closed-form moments.
double quad_prox_moment(double a, double b, double p_cap, l1p::ProxMomentKind kind,
                        double magnitude_floor = 0.0);
double quad_moreau_env(double a, double b, double p_cap);

// Upper Gaussian tail via Taylor series / continued fraction in long
// double; relative accuracy well beyond 1e-13 on [-8, 37].
double q_series(double x);

// Literal grid minimization of (x-y)^2/2 + t|x| over |x| <= sqrt(p_cap)
// with step 1e-5 plus the exact candidates {0, +/-sqrt(p_cap)}.
struct GridMin {
  double value;
  double arg;
};
GridMin grid_min_moreau(double y, double t, double p_cap);

// Cyclic coordinate-minimization solver for the finite-size problem.
// Exact scalar prox per coordinate; slow but entirely independent of the
// accelerated solver.
std::vector<double> cd_solve(const l1p::Instance& inst, const l1p::DomainParams& p,
                             int max_sweeps = 200000, double tol = 1e-14);

// Iterated per-coordinate dense grid search (step 1e-3, then two rounds of
// 100x local refinement). Only sensible for tiny instances.
std::vector<double> grid_solve(const l1p::Instance& inst, const l1p::DomainParams& p);

}  // namespace oracle
