#pragma once

#include <cmath>
#include <utility>

namespace l1p::detail {

// Bracketed scalar root finder (Illinois-damped regula falsi with a
// bisection safeguard). Requires f(lo) and f(hi) of opposite sign or
// zero. Returns the abscissa with the smaller |f| once |f| <= ftol or
// the bracket width drops below xtol * (1 + |x|).
template <typename F>
double bracketed_root(F&& f, double lo, double hi, double flo, double fhi,
                      double xtol, double ftol, int max_iter = 200) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  double side = 0.0;
  double best_x = std::abs(flo) < std::abs(fhi) ? lo : hi;
  double best_f = std::abs(flo) < std::abs(fhi) ? std::abs(flo) : std::abs(fhi);
  for (int i = 0; i < max_iter; ++i) {
    double mid;
    double denom = fhi - flo;
    if (denom != 0.0 && std::isfinite(denom)) {
      mid = (lo * fhi - hi * flo) / denom;
      // Keep the step meaningfully inside the bracket.
      double span = hi - lo;
      if (!(mid > lo + 1e-3 * span && mid < hi - 1e-3 * span) && i % 2 == 1)
        mid = 0.5 * (lo + hi);
    } else {
      mid = 0.5 * (lo + hi);
    }
    double fm = f(mid);
    if (std::abs(fm) < best_f) {
      best_f = std::abs(fm);
      best_x = mid;
    }
    if (std::abs(fm) <= ftol) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
      if (side == -1.0) fhi *= 0.5;  // Illinois damping
      side = -1.0;
    } else {
      hi = mid;
      fhi = fm;
      if (side == 1.0) flo *= 0.5;
      side = 1.0;
    }
    if (hi - lo <= xtol * (1.0 + std::abs(mid))) break;
  }
  return best_x;
}

}  // namespace l1p::detail
