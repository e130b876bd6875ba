#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asymptotic.hpp"
#include "precoder.hpp"

namespace l1p {

// One Monte Carlo campaign. delta is always taken as m/n; the value in
// params is overwritten accordingly.
struct TrialConfig {
  std::size_t n = 256;
  std::size_t m = 128;
  DomainParams params;
  int num_channels = 1;
  int num_symbol_draws = 50;
  std::uint64_t seed = 0;
  std::optional<double> threshold;  // t_x; empty = plain l1 precoder
  int threads = 1;
  std::size_t ref_sample_size = 100000;
  SolverConfig solver;
};

struct EmpiricalReport {
  MetricReport metrics;  // source = kEmpirical
  double se_p_b = 0.0;
  double se_kappa = 0.0;
  double se_sinad_lb = 0.0;
  double se_ber = 0.0;
  double w2_x = 0.0;
  double w2_e_plus = 0.0;   // conditional W2 of received entries given s = +1
  double w2_e_minus = 0.0;  // and given s = -1
  int failed_solves = 0;
  int total_solves = 0;
};

// Channel H (m x n, entries N(0, 1/n)) plus the draw-0 BPSK symbols.
Instance sample_instance(std::size_t n, std::size_t m, std::uint64_t seed,
                         std::uint32_t channel_index);

// Metrics of a given solution x on one instance, re-solving the precoder
// for each fresh symbol draw beyond the instance's own. The decode scale
// must come from the matching predictor.
MetricReport empirical_metrics(const Instance& inst, std::span<const double> x,
                               const DomainParams& p, int num_symbol_draws,
                               std::uint64_t seed, double scale,
                               std::optional<double> threshold = std::nullopt,
                               const SolverConfig& solver = {});

// 1-D Wasserstein-2 between the entries of x and the scalar limit law of
// the precoder output, via sorted quantile coupling against
// ref_sample_size iid reference draws (fixed internal seed).
double w2_to_limit_x(std::span<const double> x, const SaddlePoint& sp, const DomainParams& p,
                     std::size_t ref_sample_size);

enum class LimitLawMode { kL1, kThresholded };

// Conditional W2 of received entries e_i = h_i' x against the limiting
// Gaussian for each symbol class; returns {class +1, class -1}.
std::pair<double, double> w2_to_limit_e(std::span<const double> e, std::span<const double> s,
                                        const SaddlePoint& sp, const DomainParams& p,
                                        LimitLawMode mode,
                                        const ThresholdStats* stats = nullptr);

EmpiricalReport run_trials(const TrialConfig& cfg);

}  // namespace l1p
