#pragma once

// Centred-measure estimator: minimises (2d)^s / mu_k(B(x,d)) over centers
// x in A_k int S_01 and candidate radii d = |y - x|, y in A_k, inside the
// exact window [sqrt(3)/16, sqrt(3)/8 + 2^(1-k)], and derives the rigorous
// bracket that contains the measure at every iteration.

#include "gasket/sweep.hpp"

#include <cmath>
#include <vector>

namespace gasket {

struct CentredResult {
  int k = 0;
  double estimate = 0;        // C_k
  double lower = 0;           // C_k^inf = K_k * C_k
  double upper = 0;           // C_k^sup
  double radius = 0;          // d_k
  double convergence = 0;     // K_k = (1 + 2^(5-k)/sqrt(3))^-s
  LatticePoint center;        // optimal x_k
  std::int64_t sq_scaled = 0; // exact d_k^2 * 4^k
  MassCount mass;             // mu_k(B(x_k, d_k)) as counts
};

struct CentredOptions {
  bool full_sweep = false;  // sweep all of A_k instead of A_k int S_01
  int workers = 1;
};

inline RadiusWindow centred_window(int k) {
  return RadiusWindow(ExactRadius::sqrt_of(Rational(3) / 256),
                      ExactRadius::sqrt_of(Rational(3) / 64).shifted(Rational(2) / pow2(k)));
}

inline double centred_convergence_factor(int k) {
  return std::pow(1.0 + std::ldexp(1.0, 5 - k) / std::sqrt(3.0), -kDimension);
}

inline CentredResult compute_centred(const ApproxSet& set, const CentredOptions& opts = {}) {
  const int k = set.level();
  if (k < 4) throw domain_error("compute_centred: needs k >= 4");

  const auto bounds = centred_window(k).scaled_bounds(pow4(k), 4 * pow4(k));
  SweepRequest req;
  req.maximize = false;
  req.open_balls = false;
  req.lo_scaled = bounds.lo;
  req.hi_scaled = bounds.hi;
  req.workers = opts.workers;

  const std::vector<LatticePoint> centers =
      opts.full_sweep ? cylinder_subset(set, {}) : cylinder_subset(set, make_word({0, 1}));
  const SweepBest best = density_sweep(set, centers, req);
  if (!best.found) throw domain_error("compute_centred: empty candidate window");

  CentredResult out;
  out.k = k;
  out.estimate = best.objective;
  out.center = best.center;
  out.sq_scaled = best.sq_scaled;
  out.mass = best.mass;
  out.radius = std::sqrt(static_cast<double>(best.sq_scaled)) / static_cast<double>(pow2(k));
  out.convergence = centred_convergence_factor(k);
  out.lower = out.convergence * out.estimate;

  // C_k^sup = (2 d_k)^s / mu_k(B(x_k, d_k - 2^-k))
  const ExactRadius shrunk =
      ExactRadius::sqrt_of(Rational(best.sq_scaled) / pow4(k)).shifted(-Rational(1) / pow2(k));
  const Rational inner = ball_mass(set, {ScaledPoint::from_lattice(best.center), shrunk, true});
  out.upper = diameter_pow(best.sq_scaled, pow4(k)) / to_double(inner);
  return out;
}

struct BracketWidthRow {
  int k = 0;
  double width = 0;  // C_k^sup - C_k^inf
};

/// Per-iteration bracket widths plus a monotonicity report.
struct BracketWidthTable {
  std::vector<BracketWidthRow> rows;
  bool strictly_decreasing = true;
};

inline BracketWidthTable centred_bracket_widths(const std::vector<CentredResult>& results) {
  if (results.empty()) throw domain_error("centred_bracket_widths: no results");
  BracketWidthTable out;
  for (const CentredResult& r : results) out.rows.push_back({r.k, r.upper - r.lower});
  for (std::size_t i = 1; i < out.rows.size(); ++i)
    if (out.rows[i].width >= out.rows[i - 1].width) out.strictly_decreasing = false;
  return out;
}

}  // namespace gasket
