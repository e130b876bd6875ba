#pragma once

#include "params.hpp"
#include "saddle.hpp"

namespace l1p {

enum class MetricSource { kPredictedL1, kPredictedThresholded, kEmpirical };

// Performance summary of a precoder configuration. sinad_lb is the
// signal-to-noise-and-distortion lower bound in linear units; scale is
// the receiver-side decode gain the metrics assume.
struct MetricReport {
  double p_b = 0.0;       // per-antenna transmit power
  double kappa = 0.0;     // fraction of active antennas
  double sinad_lb = 0.0;  // linear SINAD lower bound
  double ber = 0.0;       // bit error rate for BPSK under the bound
  double scale = 0.0;     // decode gain applied at the receivers
  MetricSource source = MetricSource::kPredictedL1;
};

// Statistics of the precoder output after zeroing entries below t_x.
struct ThresholdStats {
  double t_x = 0.0;
  double theta = 0.0;        // limit of h_i' T(x) correlation term (negative)
  double alpha_tilde = 0.0;  // rms of the surviving entries
};

// Predicted metrics of the l1 precoder at a saddle point.
MetricReport predict_l1(const SaddlePoint& sp, const DomainParams& p);

// Fraction of entries surviving a magnitude threshold t_x in (0, sqrt(p_cap)).
double sparsity_after_threshold(double t_x, const SaddlePoint& sp, const DomainParams& p);

// Threshold achieving a target surviving fraction; throws InfeasibleTarget
// when the target exceeds the unthresholded sparsity or needs t_x >= sqrt(p_cap).
double threshold_for_target(double kappa_target, const SaddlePoint& sp, const DomainParams& p);

ThresholdStats thresholded_stats(double t_x, const SaddlePoint& sp, const DomainParams& p);

// Predicted metrics after thresholding.
MetricReport predict_thresholded(const ThresholdStats& ts, const SaddlePoint& sp,
                                 const DomainParams& p);

// Coefficients of the limiting law of the noiseless received entries
// h_i' x: jointly with the symbol s, the entry converges to
// gain_g * G + gain_s * s with G ~ N(0,1) independent of s. The decode
// gain satisfies scale * gain_s = 1.
struct ReceivedLaw {
  double gain_g = 0.0;
  double gain_s = 0.0;
};

ReceivedLaw received_law_l1(const SaddlePoint& sp, const DomainParams& p);
ReceivedLaw received_law_thresholded(const ThresholdStats& ts, const SaddlePoint& sp,
                                     const DomainParams& p);

}  // namespace l1p
