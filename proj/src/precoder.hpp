#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "params.hpp"

namespace l1p {

// One finite-size downlink instance: m users, n antennas, channel rows
// h_i in R^n stored row-major, BPSK symbol vector s in {-1, +1}^m.
struct Instance {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> h;        // m x n, row-major
  std::vector<double> symbols;  // m
  std::uint32_t channel_index = 0;
};

enum class StepRule { kFixedLipschitz, kBacktracking };

struct SolverConfig {
  int max_iters = 50000;
  double tol_obj = 1e-12;  // relative objective change
  double tol_kkt = 1e-9;   // first-order condition violation
  StepRule step_rule = StepRule::kFixedLipschitz;
  double lipschitz_hint = 0.0;  // 0 = estimate ||H||_2 by power iteration
  std::vector<double> x0;       // optional warm start; empty = zero vector
};

struct PrecoderResult {
  std::vector<double> x;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// (1/n) ||H x - sqrt(rho) s||^2 + (lambda1/n) ||x||_1 + (lambda2/n) ||x||^2
// over the box ||x||_inf <= sqrt(p_cap).
double objective(const Instance& inst, std::span<const double> x, const DomainParams& p);

// Largest singular value of H by power iteration on H'H.
double spectral_norm(const Instance& inst);

// Max violation of the box-constrained first-order conditions at x.
double kkt_residual(const Instance& inst, std::span<const double> x, const DomainParams& p);

// Accelerated proximal gradient with a monotone safeguard and adaptive
// restart. Produces exact zeros and exact clamps in x.
PrecoderResult solve_l1_precoder(const Instance& inst, const DomainParams& p,
                                 const SolverConfig& cfg = {});

// Zero out entries with |x_i| < t_x; entries at or above the threshold
// pass through unchanged.
std::vector<double> apply_threshold(std::span<const double> x, double t_x);

}  // namespace l1p
