#pragma once

namespace l1p {

// Soft threshold followed by a clamp to [-sqrt(p_cap), sqrt(p_cap)].
// Returns exact zeros inside the dead zone and exact +/-sqrt(p_cap)
// when clamped.
double prox(double y, double threshold, double p_cap);

// Value of the box-constrained Moreau envelope
//   min_{|x| <= sqrt(p_cap)} (x - y)^2 / 2 + threshold * |x|.
double moreau_env(double y, double threshold, double p_cap);

// Gaussian expectations of the proximal output X = prox(scale*H; threshold)
// for H ~ N(0,1). The IND_* kinds restrict to the event |X| >= magnitude_floor.
enum class ProxMomentKind {
  kSquare,     // E[X^2]
  kHCross,     // E[H X]
  kAbs,        // E[|X|]
  kIndSquare,  // E[X^2 1{|X| >= floor}]
  kIndHCross,  // E[H X 1{|X| >= floor}]
  kIndMass,    // P(|X| >= floor)
};

double expect_prox_moment(double scale, double threshold, double p_cap,
                          ProxMomentKind kind, double magnitude_floor = 0.0);

// E[moreau_env(scale*H; threshold)] for H ~ N(0,1).
double expect_moreau_env(double scale, double threshold, double p_cap);

}  // namespace l1p
