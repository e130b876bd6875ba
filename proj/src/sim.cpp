#include "sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <thread>

#include "errors.hpp"
#include "gaussian.hpp"
#include "prox.hpp"
#include "rng.hpp"

namespace l1p {

namespace {

constexpr std::uint64_t kReferenceSeed = 0x726566303153414dULL;

std::vector<double> draw_symbols(std::uint64_t seed, std::uint32_t channel, std::uint32_t draw,
                                 std::size_t m) {
  Philox4x32 gen(seed, stream_id(StreamPurpose::kSymbols, channel, draw));
  std::vector<double> s(m);
  for (auto& v : s) v = gen.uniform() < 0.5 ? -1.0 : 1.0;
  return s;
}

double norm_quantile(double u) { return -q_inv(u); }

// Quantile of a sorted sample at level u, linearly interpolated between
// order statistics placed at (i + 0.5)/N.
double sorted_quantile(const std::vector<double>& sorted, double u) {
  double pos = u * static_cast<double>(sorted.size()) - 0.5;
  if (pos <= 0.0) return sorted.front();
  if (pos >= static_cast<double>(sorted.size() - 1)) return sorted.back();
  auto i = static_cast<std::size_t>(pos);
  double frac = pos - static_cast<double>(i);
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

double w2_against_sorted_ref(std::vector<double> sample, const std::vector<double>& ref_sorted) {
  std::sort(sample.begin(), sample.end());
  double acc = 0.0;
  const double k = static_cast<double>(sample.size());
  for (std::size_t i = 0; i < sample.size(); ++i) {
    double u = (static_cast<double>(i) + 0.5) / k;
    double d = sample[i] - sorted_quantile(ref_sorted, u);
    acc += d * d;
  }
  return std::sqrt(acc / k);
}

std::vector<double> reference_sample(const SaddlePoint& sp, const DomainParams& p,
                                     std::size_t count) {
  Philox4x32 gen(kReferenceSeed, stream_id(StreamPurpose::kReference, 0, 0));
  double b = p.lambda1 * sp.tau_tilde / sp.beta;
  std::vector<double> ref(count);
  for (auto& v : ref) v = prox(sp.tau_tilde * gen.gaussian(), b, p.p_cap);
  std::sort(ref.begin(), ref.end());
  return ref;
}

struct ChannelOutcome {
  MetricReport metrics;
  std::vector<double> received;  // h_i' x pooled over draws
  std::vector<double> symbols;   // matching s_i
  int failed_solves = 0;
  int total_solves = 0;
};

void mul_rows(const Instance& inst, const double* x, double* y) {
  for (std::size_t i = 0; i < inst.m; ++i) {
    const double* row = inst.h.data() + i * inst.n;
    double acc = 0.0;
    for (std::size_t j = 0; j < inst.n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

ChannelOutcome run_channel(const Instance& inst, std::span<const double> x0,
                           const DomainParams& p, int num_symbol_draws, std::uint64_t seed,
                           double scale, std::optional<double> threshold,
                           const SolverConfig& solver, bool collect_received) {
  if (x0.size() != inst.n) throw InvalidArgument("empirical_metrics: x size mismatch");
  if (num_symbol_draws < 1)
    throw InvalidArgument("empirical_metrics: num_symbol_draws must be >= 1");
  if (!std::isfinite(scale) || !(scale > 0.0))
    throw ScalingUndefined("empirical_metrics: decode scale is not finite and positive");

  ChannelOutcome out;
  const std::size_t n = inst.n, m = inst.m;
  const double sigma = std::sqrt(p.sigma2);

  double power = 0.0;
  std::size_t nonzero = 0;
  for (double v : x0) {
    power += v * v;
    if (v != 0.0) ++nonzero;
  }
  out.metrics.p_b = power / static_cast<double>(n);
  out.metrics.kappa = static_cast<double>(nonzero) / static_cast<double>(n);

  std::vector<double> hx(m);
  std::vector<double> x_work;
  double dist_acc = 0.0;
  std::size_t ber_errors = 0;
  if (collect_received) {
    out.received.reserve(m * static_cast<std::size_t>(num_symbol_draws));
    out.symbols.reserve(m * static_cast<std::size_t>(num_symbol_draws));
  }

  for (int d = 0; d < num_symbol_draws; ++d) {
    const std::vector<double>* sym;
    const double* x;
    std::vector<double> fresh;
    if (d == 0) {
      sym = &inst.symbols;
      x = x0.data();
    } else {
      fresh = draw_symbols(seed, inst.channel_index, static_cast<std::uint32_t>(d), m);
      Instance redrawn = inst;  // same channel, fresh symbols
      redrawn.symbols = fresh;
      PrecoderResult r = solve_l1_precoder(redrawn, p, solver);
      ++out.total_solves;
      if (!r.converged) ++out.failed_solves;
      x_work = threshold ? apply_threshold(r.x, *threshold) : std::move(r.x);
      sym = &fresh;
      x = x_work.data();
    }
    mul_rows(inst, x, hx.data());
    Philox4x32 noise(seed, stream_id(StreamPurpose::kNoise, inst.channel_index,
                                     static_cast<std::uint32_t>(d)));
    for (std::size_t i = 0; i < m; ++i) {
      double s_i = (*sym)[i];
      double diff = scale * hx[i] - s_i;
      dist_acc += diff * diff;
      double y = hx[i] + sigma * noise.gaussian();
      double decoded = scale * y >= 0.0 ? 1.0 : -1.0;
      if (decoded != s_i) ++ber_errors;
      if (collect_received) {
        out.received.push_back(hx[i]);
        out.symbols.push_back(s_i);
      }
    }
  }

  const double samples = static_cast<double>(m) * num_symbol_draws;
  out.metrics.sinad_lb = 1.0 / (dist_acc / samples + scale * scale * p.sigma2);
  out.metrics.ber = static_cast<double>(ber_errors) / samples;
  out.metrics.scale = scale;
  out.metrics.source = MetricSource::kEmpirical;
  return out;
}

}  // namespace

Instance sample_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                         std::uint32_t channel_index) {
  if (n == 0 || m == 0) throw InvalidArgument("sample_instance: n and m must be >= 1");
  Instance inst;
  inst.n = n;
  inst.m = m;
  inst.channel_index = channel_index;
  inst.h.resize(m * n);
  Philox4x32 gen(seed, stream_id(StreamPurpose::kChannel, channel_index, 0));
  const double root_inv_n = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& v : inst.h) v = gen.gaussian() * root_inv_n;
  inst.symbols = draw_symbols(seed, channel_index, 0, m);
  return inst;
}

MetricReport empirical_metrics(const Instance& inst, std::span<const double> x,
                               const DomainParams& p, int num_symbol_draws,
                               std::uint64_t seed, double scale,
                               std::optional<double> threshold, const SolverConfig& solver) {
  validate(p);
  return run_channel(inst, x, p, num_symbol_draws, seed, scale, threshold, solver, false)
      .metrics;
}

double w2_to_limit_x(std::span<const double> x, const SaddlePoint& sp, const DomainParams& p,
                     std::size_t ref_sample_size) {
  validate(p);
  if (ref_sample_size < x.size())
    throw InvalidArgument("w2_to_limit_x: ref_sample_size must be >= sample size");
  std::vector<double> ref = reference_sample(sp, p, ref_sample_size);
  return w2_against_sorted_ref(std::vector<double>(x.begin(), x.end()), ref);
}

std::pair<double, double> w2_to_limit_e(std::span<const double> e, std::span<const double> s,
                                        const SaddlePoint& sp, const DomainParams& p,
                                        LimitLawMode mode, const ThresholdStats* stats) {
  validate(p);
  if (e.size() != s.size()) throw InvalidArgument("w2_to_limit_e: e and s length mismatch");
  if (mode == LimitLawMode::kThresholded && stats == nullptr)
    throw InvalidArgument("w2_to_limit_e: thresholded mode needs threshold stats");
  ReceivedLaw law = mode == LimitLawMode::kL1 ? received_law_l1(sp, p)
                                              : received_law_thresholded(*stats, sp, p);
  double result[2] = {0.0, 0.0};
  for (int cls = 0; cls < 2; ++cls) {
    const double sign = cls == 0 ? 1.0 : -1.0;
    std::vector<double> vals;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (s[i] == sign) vals.push_back(e[i]);
    if (vals.empty())
      throw InvalidArgument("w2_to_limit_e: a symbol class is empty");
    std::sort(vals.begin(), vals.end());
    const double k = static_cast<double>(vals.size());
    const double mean = law.gain_s * sign;
    double acc = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      double u = (static_cast<double>(i) + 0.5) / k;
      double d = vals[i] - (mean + law.gain_g * norm_quantile(u));
      acc += d * d;
    }
    result[cls] = std::sqrt(acc / k);
  }
  return {result[0], result[1]};
}

EmpiricalReport run_trials(const TrialConfig& cfg) {
  if (cfg.n == 0 || cfg.m == 0) throw InvalidArgument("run_trials: n and m must be >= 1");
  if (cfg.num_channels < 1) throw InvalidArgument("run_trials: num_channels must be >= 1");
  if (cfg.num_symbol_draws < 1)
    throw InvalidArgument("run_trials: num_symbol_draws must be >= 1");
  if (cfg.threads < 1) throw InvalidArgument("run_trials: threads must be >= 1");
  if (cfg.ref_sample_size < cfg.n)
    throw InvalidArgument("run_trials: ref_sample_size must be >= n");

  DomainParams p = cfg.params;
  p.delta = static_cast<double>(cfg.m) / static_cast<double>(cfg.n);
  validate(p);
  SaddlePoint sp = solve_saddle(p);

  double scale;
  ThresholdStats ts;
  LimitLawMode mode = LimitLawMode::kL1;
  if (cfg.threshold) {
    ts = thresholded_stats(*cfg.threshold, sp, p);
    scale = predict_thresholded(ts, sp, p).scale;
    mode = LimitLawMode::kThresholded;
  } else {
    scale = predict_l1(sp, p).scale;
  }

  std::vector<double> ref = reference_sample(sp, p, cfg.ref_sample_size);

  const int channels = cfg.num_channels;
  struct PerChannel {
    MetricReport metrics;
    double w2x = 0.0, w2e_plus = 0.0, w2e_minus = 0.0;
    int failed = 0, total = 0;
  };
  std::vector<PerChannel> results(channels);
  std::vector<std::exception_ptr> errors(channels);

  auto work = [&](int c) {
    Instance inst = sample_instance(cfg.n, cfg.m, cfg.seed, static_cast<std::uint32_t>(c));
    SolverConfig solver = cfg.solver;
    if (solver.step_rule == StepRule::kFixedLipschitz && solver.lipschitz_hint <= 0.0)
      solver.lipschitz_hint = spectral_norm(inst);
    PrecoderResult first = solve_l1_precoder(inst, p, solver);
    PerChannel& slot = results[c];
    slot.total = 1;
    slot.failed = first.converged ? 0 : 1;
    slot.w2x = w2_against_sorted_ref(first.x, ref);
    std::vector<double> x_used =
        cfg.threshold ? apply_threshold(first.x, *cfg.threshold) : std::move(first.x);
    ChannelOutcome oc = run_channel(inst, x_used, p, cfg.num_symbol_draws, cfg.seed, scale,
                                    cfg.threshold, solver, true);
    slot.metrics = oc.metrics;
    slot.failed += oc.failed_solves;
    slot.total += oc.total_solves;
    auto w2e = w2_to_limit_e(oc.received, oc.symbols, sp, p, mode,
                             mode == LimitLawMode::kThresholded ? &ts : nullptr);
    slot.w2e_plus = w2e.first;
    slot.w2e_minus = w2e.second;
  };

  if (cfg.threads == 1 || channels == 1) {
    for (int c = 0; c < channels; ++c) work(c);
  } else {
    std::atomic<int> next{0};
    auto runner = [&] {
      for (;;) {
        int c = next.fetch_add(1);
        if (c >= channels) return;
        try {
          work(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    int count = std::min(cfg.threads, channels);
    pool.reserve(count);
    for (int t = 0; t < count; ++t) pool.emplace_back(runner);
    for (auto& th : pool) th.join();
    for (int c = 0; c < channels; ++c)
      if (errors[c]) std::rethrow_exception(errors[c]);
  }

  EmpiricalReport rep;
  auto mean_of = [&](auto getter) {
    double acc = 0.0;
    for (const auto& r : results) acc += getter(r);
    return acc / channels;
  };
  auto se_of = [&](auto getter, double mean) {
    if (channels < 2) return 0.0;
    double acc = 0.0;
    for (const auto& r : results) {
      double d = getter(r) - mean;
      acc += d * d;
    }
    return std::sqrt(acc / (channels - 1.0) / channels);
  };

  auto g_pb = [](const PerChannel& r) { return r.metrics.p_b; };
  auto g_k = [](const PerChannel& r) { return r.metrics.kappa; };
  auto g_s = [](const PerChannel& r) { return r.metrics.sinad_lb; };
  auto g_b = [](const PerChannel& r) { return r.metrics.ber; };
  rep.metrics.p_b = mean_of(g_pb);
  rep.metrics.kappa = mean_of(g_k);
  rep.metrics.sinad_lb = mean_of(g_s);
  rep.metrics.ber = mean_of(g_b);
  rep.metrics.scale = scale;
  rep.metrics.source = MetricSource::kEmpirical;
  rep.se_p_b = se_of(g_pb, rep.metrics.p_b);
  rep.se_kappa = se_of(g_k, rep.metrics.kappa);
  rep.se_sinad_lb = se_of(g_s, rep.metrics.sinad_lb);
  rep.se_ber = se_of(g_b, rep.metrics.ber);
  rep.w2_x = mean_of([](const PerChannel& r) { return r.w2x; });
  rep.w2_e_plus = mean_of([](const PerChannel& r) { return r.w2e_plus; });
  rep.w2_e_minus = mean_of([](const PerChannel& r) { return r.w2e_minus; });
  for (const auto& r : results) {
    rep.failed_solves += r.failed;
    rep.total_solves += r.total;
  }
  return rep;
}

}  // namespace l1p
