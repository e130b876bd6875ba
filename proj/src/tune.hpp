#pragma once

#include <optional>

#include "asymptotic.hpp"
#include "params.hpp"

namespace l1p {

enum class TuneMode { kL1, kThresholded };

struct TuneTarget {
  double kappa_target = 0.5;        // in (0, 1]
  double pb_target = 1.0;           // in (0, p_cap)
  std::optional<double> t_x;        // thresholded mode threshold
  TuneMode mode = TuneMode::kL1;
};

struct CalibratedPair {
  double lambda1 = 0.0;
  double rho = 0.0;
  double kappa_residual = 0.0;
  double pb_residual = 0.0;
};

struct ThresholdChoice {
  double t_x = 0.0;
  double lambda1 = 0.0;
  double rho = 0.0;
  double sinad_lb = 0.0;
};

// rho such that the predicted per-antenna power hits pb_target at the
// given lambda1 (and threshold when mode is thresholded), to 1e-8.
double calibrate_rho(double lambda1, double pb_target, const DomainParams& base,
                     TuneMode mode = TuneMode::kL1, double t_x = 0.0);

// (lambda1, rho) hitting both the sparsity and power targets.
CalibratedPair calibrate_pair(const TuneTarget& target, const DomainParams& base);

// Scan of t_x maximizing the predicted thresholded SINAD subject to the
// sparsity and power targets.
ThresholdChoice optimal_threshold(const TuneTarget& target, const DomainParams& base,
                                  int grid_size);

}  // namespace l1p
