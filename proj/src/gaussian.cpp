#include "gaussian.hpp"

#include <cmath>

#include "errors.hpp"

namespace l1p {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;
constexpr double kInvSqrt2 = 0.7071067811865475244008444;
}  // namespace

double normal_pdf(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double q_func(double x) { return 0.5 * std::erfc(x * kInvSqrt2); }

double gauss_mass(double u, double v) {
  if (v < u) return -gauss_mass(v, u);
  // Pick the formulation that avoids cancellation: erfc differences for
  // same-sign limits, erf across the origin.
  if (u >= 0.0) return q_func(u) - q_func(v);
  if (v <= 0.0) return q_func(-v) - q_func(-u);
  return 0.5 * (std::erf(v * kInvSqrt2) + std::erf(-u * kInvSqrt2));
}

double q_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw InvalidArgument("q_inv: p must be in (0, 1)");
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -q_inv(1.0 - p);

  // Bisect on [0, 40] (q_func(40) ~ 7e-350 underflows, so the bracket
  // covers every representable p), then polish with Newton in q-space.
  double lo = 0.0, hi = 40.0;
  for (int i = 0; i < 60; ++i) {
    double mid = 0.5 * (lo + hi);
    if (q_func(mid) > p) lo = mid; else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int i = 0; i < 6; ++i) {
    double d = normal_pdf(x);
    if (d <= 0.0) break;
    double step = (q_func(x) - p) / d;
    x += step;
    if (std::abs(step) <= 1e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

}  // namespace l1p
