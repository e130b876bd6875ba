#include "precoder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"
#include "prox.hpp"
#include "rng.hpp"

namespace l1p {

namespace {

void check_instance(const Instance& inst) {
  if (inst.m == 0 || inst.n == 0)
    throw InvalidArgument("instance: m and n must be positive");
  if (inst.h.size() != inst.m * inst.n)
    throw InvalidArgument("instance: channel matrix size mismatch");
  if (inst.symbols.size() != inst.m)
    throw InvalidArgument("instance: symbol vector size mismatch");
  for (double s : inst.symbols)
    if (s != 1.0 && s != -1.0)
      throw InvalidArgument("instance: symbols must be exactly +1 or -1");
}

// y = H x. Four split accumulators per row: fixed summation order, and the
// dependency chains stay short enough to keep the FMA units busy.
void mul(const Instance& inst, const double* x, double* y) {
  const std::size_t n = inst.n;
  for (std::size_t i = 0; i < inst.m; ++i) {
    const double* row = inst.h.data() + i * n;
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::size_t j = 0;
    for (; j + 4 <= n; j += 4) {
      a0 += row[j] * x[j];
      a1 += row[j + 1] * x[j + 1];
      a2 += row[j + 2] * x[j + 2];
      a3 += row[j + 3] * x[j + 3];
    }
    for (; j < n; ++j) a0 += row[j] * x[j];
    y[i] = (a0 + a1) + (a2 + a3);
  }
}

// g = H' r, accumulated row by row.
void mul_t(const Instance& inst, const double* r, double* g) {
  const std::size_t n = inst.n;
  std::fill(g, g + n, 0.0);
  for (std::size_t i = 0; i < inst.m; ++i) {
    const double* row = inst.h.data() + i * n;
    const double ri = r[i];
    for (std::size_t j = 0; j < n; ++j) g[j] += row[j] * ri;
  }
}

double penalized_value(const Instance& inst, const DomainParams& p, const double* hx,
                       const double* x) {
  const double sq_rho = std::sqrt(p.rho);
  double quad = 0.0;
  for (std::size_t i = 0; i < inst.m; ++i) {
    double d = hx[i] - sq_rho * inst.symbols[i];
    quad += d * d;
  }
  double l1 = 0.0, l2 = 0.0;
  for (std::size_t j = 0; j < inst.n; ++j) {
    l1 += std::abs(x[j]);
    l2 += x[j] * x[j];
  }
  return (quad + p.lambda1 * l1 + p.lambda2 * l2) / static_cast<double>(inst.n);
}

// gradient of the smooth part at x, using a precomputed hx = H x
void smooth_gradient(const Instance& inst, const DomainParams& p, const double* hx,
                     const double* x, double* scratch_m, double* g) {
  const double sq_rho = std::sqrt(p.rho);
  for (std::size_t i = 0; i < inst.m; ++i)
    scratch_m[i] = hx[i] - sq_rho * inst.symbols[i];
  mul_t(inst, scratch_m, g);
  const double inv_n = 2.0 / static_cast<double>(inst.n);
  for (std::size_t j = 0; j < inst.n; ++j)
    g[j] = inv_n * (g[j] + p.lambda2 * x[j]);
}

double kkt_from_gradient(const double* g, const double* x, std::size_t n, double lam,
                         double root_p) {
  double worst = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    double v;
    if (x[j] == 0.0)
      v = std::max(0.0, std::abs(g[j]) - lam);
    else if (x[j] == root_p)
      v = std::max(0.0, g[j] + lam);
    else if (x[j] == -root_p)
      v = std::max(0.0, lam - g[j]);
    else
      v = std::abs(g[j] + (x[j] > 0.0 ? lam : -lam));
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace

double objective(const Instance& inst, std::span<const double> x, const DomainParams& p) {
  check_instance(inst);
  validate(p);
  if (x.size() != inst.n) throw InvalidArgument("objective: x size mismatch");
  const double root_p = std::sqrt(p.p_cap);
  for (double v : x)
    if (!(std::abs(v) <= root_p * (1.0 + 1e-12)))
      throw InvalidArgument("objective: x violates the power cap");
  std::vector<double> hx(inst.m);
  mul(inst, x.data(), hx.data());
  return penalized_value(inst, p, hx.data(), x.data());
}

double spectral_norm(const Instance& inst) {
  check_instance(inst);
  // Deterministic pseudo-random start so repeated runs agree bit for bit.
  Philox4x32 gen(0x9e3779b97f4a7c15ULL, stream_id(StreamPurpose::kInit, 0, 0));
  std::vector<double> v(inst.n), w(inst.m), u(inst.n);
  for (auto& e : v) e = gen.gaussian();
  double norm = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
  if (norm == 0.0) return 0.0;
  for (auto& e : v) e /= norm;
  double lambda = 0.0;
  for (int it = 0; it < 100; ++it) {
    mul(inst, v.data(), w.data());
    mul_t(inst, w.data(), u.data());
    double next = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);
    double unorm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    if (unorm == 0.0) return 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) v[j] = u[j] / unorm;
    if (it > 0 && std::abs(next - lambda) <= 1e-10 * std::max(next, 1e-300)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(lambda);
}

double kkt_residual(const Instance& inst, std::span<const double> x, const DomainParams& p) {
  check_instance(inst);
  validate(p);
  if (x.size() != inst.n) throw InvalidArgument("kkt_residual: x size mismatch");
  const double root_p = std::sqrt(p.p_cap);
  for (double v : x)
    if (!(std::abs(v) <= root_p * (1.0 + 1e-12)))
      throw InvalidArgument("kkt_residual: x violates the power cap");
  std::vector<double> hx(inst.m), scratch(inst.m), g(inst.n);
  mul(inst, x.data(), hx.data());
  smooth_gradient(inst, p, hx.data(), x.data(), scratch.data(), g.data());
  return kkt_from_gradient(g.data(), x.data(), inst.n, p.lambda1 / static_cast<double>(inst.n),
                           root_p);
}

PrecoderResult solve_l1_precoder(const Instance& inst, const DomainParams& p,
                                 const SolverConfig& cfg) {
  check_instance(inst);
  validate(p);
  if (cfg.max_iters < 1) throw InvalidArgument("solver: max_iters must be >= 1");

  const std::size_t n = inst.n, m = inst.m;
  const double root_p = std::sqrt(p.p_cap);
  const double lam = p.lambda1 / static_cast<double>(n);
  const double inv_n2 = 2.0 / static_cast<double>(n);

  double lip;
  if (cfg.step_rule == StepRule::kFixedLipschitz) {
    double sigma = cfg.lipschitz_hint > 0.0 ? cfg.lipschitz_hint : spectral_norm(inst);
    lip = inv_n2 * (sigma * sigma * (1.0 + 1e-9) + p.lambda2);
  } else {
    double fro = 0.0;
    for (double v : inst.h) fro += v * v;
    lip = std::max(inv_n2 * (fro / static_cast<double>(std::min(m, n)) + p.lambda2), 1e-12);
  }
  if (!(lip > 0.0)) lip = 1.0;

  std::vector<double> x(n, 0.0), x_prev(n, 0.0), y(n, 0.0), z(n), g(n);
  std::vector<double> hx(m, 0.0), hx_prev(m, 0.0), hy(m), hz(m), scratch(m);
  if (!cfg.x0.empty()) {
    if (cfg.x0.size() != n) throw InvalidArgument("solver: x0 size mismatch");
    for (double v : cfg.x0)
      if (!std::isfinite(v) || std::abs(v) > root_p * (1.0 + 1e-12))
        throw InvalidArgument("solver: x0 violates the power cap");
    for (std::size_t j = 0; j < n; ++j) x[j] = std::clamp(cfg.x0[j], -root_p, root_p);
    x_prev = x;
    mul(inst, x.data(), hx.data());
    hx_prev = hx;
  }
  double obj = penalized_value(inst, p, hx.data(), x.data());
  double t_momentum = 1.0;
  double kkt = kkt_residual(inst, x, p);

  PrecoderResult res;
  if (kkt <= cfg.tol_kkt) {  // start point already optimal (e.g. large lambda1)
    res.x = x;
    res.objective = obj;
    res.kkt_residual = kkt;
    res.iterations = 0;
    res.converged = true;
    return res;
  }

  auto prox_step = [&](const double* base, const double* grad, double step, double* out) {
    double thr = step * lam;
    for (std::size_t j = 0; j < n; ++j) {
      double v = base[j] - step * grad[j];
      double mag = std::abs(v) - thr;
      out[j] = mag <= 0.0 ? 0.0 : std::copysign(std::min(mag, root_p), v);
    }
  };

  int it = 0;
  bool converged = false;
  int check_countdown = 1;
  for (it = 1; it <= cfg.max_iters; ++it) {
    double mom = (t_momentum - 1.0);
    double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_momentum * t_momentum));
    mom /= t_next;

    for (std::size_t j = 0; j < n; ++j) y[j] = x[j] + mom * (x[j] - x_prev[j]);
    for (std::size_t i = 0; i < m; ++i) hy[i] = hx[i] + mom * (hx[i] - hx_prev[i]);

    double step = 1.0 / lip;
    smooth_gradient(inst, p, hy.data(), y.data(), scratch.data(), g.data());
    prox_step(y.data(), g.data(), step, z.data());

    if (cfg.step_rule == StepRule::kBacktracking) {
      // Grow the curvature estimate until the quadratic upper bound holds at z.
      for (;;) {
        mul(inst, z.data(), hz.data());
        double fz = 0.0, fy = 0.0, lin = 0.0, dist = 0.0;
        const double sq_rho = std::sqrt(p.rho);
        for (std::size_t i = 0; i < m; ++i) {
          double dz = hz[i] - sq_rho * inst.symbols[i];
          double dy = hy[i] - sq_rho * inst.symbols[i];
          fz += dz * dz;
          fy += dy * dy;
        }
        for (std::size_t j = 0; j < n; ++j) {
          fz += p.lambda2 * z[j] * z[j];
          fy += p.lambda2 * y[j] * y[j];
          double d = z[j] - y[j];
          lin += g[j] * d;
          dist += d * d;
        }
        fz /= static_cast<double>(n);
        fy /= static_cast<double>(n);
        if (fz <= fy + lin + 0.5 * lip * dist + 1e-15 * std::abs(fy)) break;
        lip *= 2.0;
        step = 1.0 / lip;
        prox_step(y.data(), g.data(), step, z.data());
      }
    } else {
      mul(inst, z.data(), hz.data());
    }

    double obj_z = penalized_value(inst, p, hz.data(), z.data());
    bool restarted = false;
    if (obj_z > obj) {
      // Momentum overshot; fall back to a plain proximal step from x.
      smooth_gradient(inst, p, hx.data(), x.data(), scratch.data(), g.data());
      prox_step(x.data(), g.data(), step, z.data());
      mul(inst, z.data(), hz.data());
      obj_z = penalized_value(inst, p, hz.data(), z.data());
      t_next = 1.0;
      restarted = true;
    }
    if (!restarted) {
      double corr = 0.0;
      for (std::size_t j = 0; j < n; ++j) corr += (y[j] - z[j]) * (z[j] - x[j]);
      if (corr > 0.0) t_next = 1.0;
    }

    double rel_change = (obj - obj_z) / std::max(1.0, std::abs(obj_z));
    std::swap(x_prev, x);
    std::swap(hx_prev, hx);
    std::swap(x, z);
    std::swap(hx, hz);
    obj = obj_z;
    t_momentum = t_next;

    if (--check_countdown == 0 || rel_change <= cfg.tol_obj) {
      smooth_gradient(inst, p, hx.data(), x.data(), scratch.data(), g.data());
      kkt = kkt_from_gradient(g.data(), x.data(), n, lam, root_p);
      if (kkt <= cfg.tol_kkt && rel_change <= cfg.tol_obj) {
        converged = true;
        break;
      }
      check_countdown = 10;
    }
  }

  if (!converged) {
    smooth_gradient(inst, p, hx.data(), x.data(), scratch.data(), g.data());
    kkt = kkt_from_gradient(g.data(), x.data(), n, lam, root_p);
    converged = kkt <= cfg.tol_kkt;
  }
  res.x = std::move(x);
  res.objective = obj;
  res.kkt_residual = kkt;
  res.iterations = std::min(it, cfg.max_iters);
  res.converged = converged;
  return res;
}

std::vector<double> apply_threshold(std::span<const double> x, double t_x) {
  if (!(t_x > 0.0)) throw InvalidArgument("apply_threshold: t_x must be > 0");
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j)
    out[j] = std::abs(x[j]) < t_x ? 0.0 : x[j];
  return out;
}

}  // namespace l1p
