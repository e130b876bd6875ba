#include "prox.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "gaussian.hpp"

namespace l1p {

double prox(double y, double threshold, double p_cap) {
  if (!std::isfinite(y) || !(threshold >= 0.0) || !(p_cap > 0.0))
    throw InvalidArgument("prox: need finite y, threshold >= 0, p_cap > 0");
  double mag = std::abs(y) - threshold;
  if (mag <= 0.0) return 0.0;
  return std::copysign(std::min(mag, std::sqrt(p_cap)), y);
}

double moreau_env(double y, double threshold, double p_cap) {
  double x = prox(y, threshold, p_cap);
  double d = x - y;
  return 0.5 * d * d + threshold * std::abs(x);
}

namespace {

// int_u^v (x - c)^2 phi(x) dx; v may be +inf.
double second_moment_segment(double u, double v, double c) {
  double head = (u - 2.0 * c) * normal_pdf(u);
  double tail = std::isinf(v) ? 0.0 : (v - 2.0 * c) * normal_pdf(v);
  return (1.0 + c * c) * gauss_mass(u, v) + head - tail;
}

}  // namespace

// With a = scale and b = threshold, the output prox(a H; b) is piecewise
// linear in H with breakpoints at h0 = b/a (dead zone edge) and
// h1 = (b + sqrt(P))/a (clamp edge), so every moment below is a short
// combination of phi and Q at those points. The indicator |X| >= t cuts
// the middle piece at ht = (b + t)/a.
double expect_prox_moment(double scale, double threshold, double p_cap,
                          ProxMomentKind kind, double magnitude_floor) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InvalidArgument("expect_prox_moment: scale must be finite and > 0");
  if (!(threshold >= 0.0) || !std::isfinite(threshold))
    throw InvalidArgument("expect_prox_moment: threshold must be finite and >= 0");
  if (!(p_cap > 0.0) || !std::isfinite(p_cap))
    throw InvalidArgument("expect_prox_moment: p_cap must be finite and > 0");

  const double a = scale;
  const double b = threshold;
  const double root_p = std::sqrt(p_cap);
  const bool indicator = kind == ProxMomentKind::kIndSquare ||
                         kind == ProxMomentKind::kIndHCross ||
                         kind == ProxMomentKind::kIndMass;
  if (indicator) {
    if (!(magnitude_floor > 0.0))
      throw InvalidArgument(
          "expect_prox_moment: indicator kinds need magnitude_floor > 0; "
          "use the unrestricted kind for floor 0");
    if (magnitude_floor > root_p)
      throw InvalidArgument("expect_prox_moment: magnitude_floor exceeds sqrt(p_cap)");
  } else if (magnitude_floor != 0.0) {
    throw InvalidArgument("expect_prox_moment: magnitude_floor only applies to indicator kinds");
  }

  const double h0 = b / a;
  const double h1 = (b + root_p) / a;
  const double ht = indicator ? (b + magnitude_floor) / a : h0;

  switch (kind) {
    case ProxMomentKind::kSquare:
      return 2.0 * a * a * second_moment_segment(h0, h1, h0) + 2.0 * p_cap * q_func(h1);
    case ProxMomentKind::kIndSquare:
      return 2.0 * a * a * second_moment_segment(ht, h1, h0) + 2.0 * p_cap * q_func(h1);
    case ProxMomentKind::kHCross:
      // Stein identity: boundary terms at the clamp edge cancel.
      return 2.0 * a * gauss_mass(h0, h1);
    case ProxMomentKind::kIndHCross:
      return 2.0 * a * gauss_mass(ht, h1) + 2.0 * magnitude_floor * normal_pdf(ht);
    case ProxMomentKind::kAbs:
      return 2.0 * a * (normal_pdf(h0) - normal_pdf(h1)) - 2.0 * b * gauss_mass(h0, h1) +
             2.0 * root_p * q_func(h1);
    case ProxMomentKind::kIndMass:
      return 2.0 * q_func(ht);
  }
  throw InvalidArgument("expect_prox_moment: unknown kind");
}

double expect_moreau_env(double scale, double threshold, double p_cap) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InvalidArgument("expect_moreau_env: scale must be finite and > 0");
  if (!(threshold >= 0.0) || !std::isfinite(threshold))
    throw InvalidArgument("expect_moreau_env: threshold must be finite and >= 0");
  if (!(p_cap > 0.0) || !std::isfinite(p_cap))
    throw InvalidArgument("expect_moreau_env: p_cap must be finite and > 0");

  const double a = scale;
  const double b = threshold;
  const double root_p = std::sqrt(p_cap);
  const double h0 = b / a;
  const double h1 = (b + root_p) / a;
  const double c = root_p / a;
  const double inf = std::numeric_limits<double>::infinity();

  // Dead zone: envelope is y^2/2.
  double dead = a * a * (gauss_mass(0.0, h0) - h0 * normal_pdf(h0));
  // Linear zone: envelope is b*y - b^2/2.
  double linear = 2.0 * a * b * (normal_pdf(h0) - normal_pdf(h1)) - b * b * gauss_mass(h0, h1);
  // Clamp zone: envelope is (y - sqrt(P))^2/2 + b*sqrt(P).
  double clamp = a * a * second_moment_segment(h1, inf, c) + 2.0 * b * root_p * q_func(h1);
  return dead + linear + clamp;
}

}  // namespace l1p
