#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oracle {

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014326779399461;

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double simpson(const std::function<double(double)>& g, double a, double m, double b,
               double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& g, double a, double b, double fa,
                double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = g(lm), frm = g(rm);
  double left = simpson(g, a, lm, m, fa, flm, fm);
  double right = simpson(g, m, rm, b, fm, frm, fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return adaptive(g, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(g, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate_segment(const std::function<double(double)>& g, double a, double b,
                         double tol) {
  if (!(b > a)) return 0.0;
  double m = 0.5 * (a + b);
  double fa = g(a), fm = g(m), fb = g(b);
  return adaptive(g, a, b, fa, fm, fb, simpson(g, a, m, b, fa, fm, fb), tol, 55);
}

}  // namespace

double gauss_expect(const std::function<double(double)>& f,
                    const std::vector<double>& breakpoints) {
  const double limit = 45.0;  // phi(45) underflows; nothing lives beyond
  std::vector<double> cuts{-limit, 0.0, limit};
  for (double b : breakpoints)
    for (double s : {b, -b})
      if (s > -limit && s < limit) cuts.push_back(s);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto g = [&](double x) { return f(x) * phi(x); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    // Pre-split to width <= 1 so a shoulder of the Gaussian weight can
    // never hide between the first probe points of a wide segment.
    const double lo = cuts[i], hi = cuts[i + 1];
    const int pieces = std::max(1, static_cast<int>(std::ceil(hi - lo)));
    for (int k = 0; k < pieces; ++k) {
      const double a = lo + (hi - lo) * k / pieces;
      const double b = lo + (hi - lo) * (k + 1) / pieces;
      total += integrate_segment(g, a, b, 1e-16);
    }
  }
  return total;
}

double quad_prox_moment(double a, double b, double p_cap, l1p::ProxMomentKind kind,
                        double magnitude_floor) {
  const double h0 = b / a;
  const double h1 = (b + std::sqrt(p_cap)) / a;
  const double ht = (b + magnitude_floor) / a;
  std::vector<double> cuts{h0, ht, h1};
  auto f = [&](double x) -> double {
    double v = l1p::prox(a * x, b, p_cap);
    bool keep = magnitude_floor > 0.0 ? std::abs(v) >= magnitude_floor : true;
    switch (kind) {
      case l1p::ProxMomentKind::kSquare:
        return v * v;
      case l1p::ProxMomentKind::kHCross:
        return x * v;
      case l1p::ProxMomentKind::kAbs:
        return std::abs(v);
      case l1p::ProxMomentKind::kIndSquare:
        return keep ? v * v : 0.0;
      case l1p::ProxMomentKind::kIndHCross:
        return keep ? x * v : 0.0;
      case l1p::ProxMomentKind::kIndMass:
        return keep ? 1.0 : 0.0;
    }
    return 0.0;
  };
  return gauss_expect(f, cuts);
}

double quad_moreau_env(double a, double b, double p_cap) {
  const double h0 = b / a;
  const double h1 = (b + std::sqrt(p_cap)) / a;
  return gauss_expect([&](double x) { return l1p::moreau_env(a * x, b, p_cap); }, {h0, h1});
}

double q_series(double x) {
  if (x < 0.0) return 1.0 - q_series(-x);
  const long double z = static_cast<long double>(x) * 0.70710678118654752440L;
  const long double inv_sqrt_pi = 0.56418958354775628695L;
  if (x <= 3.0) {
    // erf Taylor series, summed in long double.
    long double term = z, sum = z, z2 = z * z;
    for (int n = 1; n < 200; ++n) {
      term *= -z2 / n;
      long double add = term / (2 * n + 1);
      sum += add;
      if (std::abs((double)add) < 1e-25 * std::abs((double)sum)) break;
    }
    long double erf = 2.0L * inv_sqrt_pi * sum;
    return static_cast<double>(0.5L * (1.0L - erf));
  }
  // erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
  // evaluated bottom-up with a fixed depth.
  long double cf = 0.0L;
  for (int k = 120; k >= 1; --k) cf = (0.5L * k) / (z + cf);
  long double erfc = std::exp(-z * z) * inv_sqrt_pi / (z + cf);
  return static_cast<double>(0.5L * erfc);
}

GridMin grid_min_moreau(double y, double t, double p_cap) {
  const double r = std::sqrt(p_cap);
  auto g = [&](double x) { return 0.5 * (x - y) * (x - y) + t * std::abs(x); };
  GridMin best{g(0.0), 0.0};
  auto consider = [&](double x) {
    double v = g(x);
    if (v < best.value) best = {v, x};
  };
  consider(r);
  consider(-r);
  const long steps = std::lround(std::floor(2.0 * r / 1e-5));
  for (long k = 0; k <= steps; ++k) consider(-r + 1e-5 * static_cast<double>(k));
  return best;
}

std::vector<double> cd_solve(const l1p::Instance& inst, const l1p::DomainParams& p,
                             int max_sweeps, double tol) {
  const std::size_t n = inst.n, m = inst.m;
  const double sq_rho = std::sqrt(p.rho);
  std::vector<double> x(n, 0.0), r(m);
  for (std::size_t i = 0; i < m; ++i) r[i] = -sq_rho * inst.symbols[i];
  std::vector<double> col_norm(n, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      col_norm[j] += inst.h[i * n + j] * inst.h[i * n + j];

  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double worst = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double denom = col_norm[j] + p.lambda2;
      double hr = 0.0;
      for (std::size_t i = 0; i < m; ++i) hr += inst.h[i * n + j] * r[i];
      double t_new;
      if (denom <= 0.0) {
        t_new = 0.0;  // dead column with no ridge: any value works, keep zero
      } else {
        double c = (col_norm[j] * x[j] - hr) / denom;
        t_new = l1p::prox(c, 0.5 * p.lambda1 / denom, p.p_cap);
      }
      double d = t_new - x[j];
      if (d != 0.0) {
        for (std::size_t i = 0; i < m; ++i) r[i] += inst.h[i * n + j] * d;
        x[j] = t_new;
        worst = std::max(worst, std::abs(d));
      }
    }
    if (worst <= tol) break;
  }
  return x;
}

std::vector<double> grid_solve(const l1p::Instance& inst, const l1p::DomainParams& p) {
  const std::size_t n = inst.n;
  const double r = std::sqrt(p.p_cap);
  std::vector<double> x(n, 0.0);
  auto value = [&](const std::vector<double>& v) { return l1p::objective(inst, v, p); };

  for (int round = 0; round < 400; ++round) {
    double improved = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      double best_x = x[j];
      std::vector<double> trial = x;
      double best_v = value(trial);
      auto consider = [&](double cand) {
        if (std::abs(cand) > r) return;
        trial[j] = cand;
        double v = value(trial);
        if (v < best_v) {
          best_v = v;
          best_x = cand;
        }
      };
      double step = 1e-3;
      for (double c = -r; c <= r + 0.5 * step; c += step) consider(c);
      consider(0.0);
      consider(r);
      consider(-r);
      // two local refinement rounds around the coarse winner
      for (int level = 0; level < 2; ++level) {
        double center = best_x, width = step;
        step /= 100.0;
        for (double c = center - width; c <= center + width + 0.5 * step; c += step)
          consider(c);
      }
      improved = std::max(improved, std::abs(best_x - x[j]));
      x[j] = best_x;
    }
    if (improved <= 1e-7) break;
  }
  return x;
}

}  // namespace oracle
