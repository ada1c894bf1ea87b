#pragma once

// Density values theta^s(x, d) = mu_k(B(x,d)) / (2d)^s for s = log 3 / log 2,
// and the bracket for the restricted measure of a ball. The exponentiation
// is the only inexact step anywhere in the pipeline: (2d)^s is evaluated in
// double precision from the exact rational (2d)^2.

#include "gasket/measure.hpp"

#include <cmath>

namespace gasket {

/// Similarity dimension of the gasket: s = log 3 / log 2.
inline const double kDimension = std::log2(3.0);

/// (2d)^s where d = sqrt(D / S): computed as (4 D / S)^(s/2).
inline double diameter_pow(std::int64_t D, std::int64_t S) {
  return std::pow(static_cast<double>(4 * D) * (1.0 / static_cast<double>(S)), 0.5 * kDimension);
}

/// (2d)^s for an exact radius.
inline double diameter_pow(const ExactRadius& d) {
  return std::pow(4.0 * d.value_sq(), 0.5 * kDimension);
}

/// (2d)^s / mu_k(B): the quantity minimised for the centred measure and
/// maximised (over open balls) for the packing measure.
inline double inverse_density(const ApproxSet& set, const BallSpec& ball) {
  const Rational m = ball_mass(set, ball);
  if (m == 0) throw domain_error("inverse_density: empty ball");
  return diameter_pow(ball.radius) / to_double(m);
}

inline double density(const ApproxSet& set, const BallSpec& ball) {
  return 1.0 / inverse_density(set, ball);
}

/// Centred-measure bounds used to bracket the restricted measure of a ball.
struct CentredBounds {
  double lower = 0;     // C_k^inf
  double estimate = 0;  // C_k
  double upper = 0;     // C_k^sup
};

struct RestrictedBallBracket {
  double lower = 0;
  double estimate = 0;
  double upper = 0;
  Rational mass_inner;   // mu_k(B(x, d - 2^-k))
  Rational mass_mid;     // mu_k(B(x, d))
  Rational mass_outer;   // mu_k(B(x, d + 2^-k))
};

/// Bracket for the centred measure restricted to B(x, d):
///   bounds.lower * mu_k(B(x, d - 2^-k)) <= value <= bounds.upper * mu_k(B(x, d + 2^-k)),
/// with estimate bounds.estimate * mu_k(B(x, d)). Needs k >= 4 and d > 2^-k.
inline RestrictedBallBracket restricted_ball_bracket(const ApproxSet& set, const ScaledPoint& x,
                                                     const ExactRadius& d, const CentredBounds& bounds) {
  const int k = set.level();
  if (k < 4) throw domain_error("restricted_ball_bracket: needs k >= 4");
  const Rational step = Rational(1) / pow2(k);
  if (d.compare(ExactRadius::from_rational(step)) <= 0)
    throw domain_error("restricted_ball_bracket: needs d > 2^-k");
  RestrictedBallBracket out;
  out.mass_inner = ball_mass(set, {x, d.shifted(-step), true});
  out.mass_mid = ball_mass(set, {x, d, true});
  out.mass_outer = ball_mass(set, {x, d.shifted(step), true});
  out.lower = bounds.lower * to_double(out.mass_inner);
  out.estimate = bounds.estimate * to_double(out.mass_mid);
  out.upper = bounds.upper * to_double(out.mass_outer);
  return out;
}

}  // namespace gasket
