#pragma once

#include <cmath>

#include "errors.hpp"

namespace l1p {

// Scalar problem parameters shared by the saddle system, the
// predictors, and the finite-size solver.
//
//   rho      signal power rho > 0
//   delta    user-to-antenna ratio m/n > 0
//   lambda1  l1 penalty weight >= 0
//   lambda2  ridge penalty weight >= 0
//   p_cap    per-antenna power cap P > 0
//   sigma2   receiver noise variance sigma^2 >= 0
struct DomainParams {
  double rho = 1.0;
  double delta = 1.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double p_cap = 1.0;
  double sigma2 = 0.0;
};

inline void validate(const DomainParams& p) {
  auto bad = [](double v) { return !std::isfinite(v); };
  if (bad(p.rho) || p.rho <= 0.0) throw InvalidArgument("rho must be finite and > 0");
  if (bad(p.delta) || p.delta <= 0.0) throw InvalidArgument("delta must be finite and > 0");
  if (bad(p.lambda1) || p.lambda1 < 0.0) throw InvalidArgument("lambda1 must be finite and >= 0");
  if (bad(p.lambda2) || p.lambda2 < 0.0) throw InvalidArgument("lambda2 must be finite and >= 0");
  if (bad(p.p_cap) || p.p_cap <= 0.0) throw InvalidArgument("p_cap must be finite and > 0");
  if (bad(p.sigma2) || p.sigma2 < 0.0) throw InvalidArgument("sigma2 must be finite and >= 0");
}

// The scalar saddle has an interior solution whenever some
// regularization is present or there are at least as many antennas as
// users.
inline bool saddle_admissible(const DomainParams& p) {
  return p.lambda1 > 0.0 || p.lambda2 > 0.0 || p.delta >= 1.0;
}

}  // namespace l1p
