#pragma once

// Packing-measure estimator: maximises (2d)^s / mu_k(U(x,d)) over open
// balls with centers in A_k int S_01 and radii d = |y - x|, y in A_k
// outside S_2, within [d_0, d_x] where d_x is the largest distance from x
// to the boundary of the feasible rhombus R. Two published constant sets
// are supported.

#include "gasket/sweep.hpp"

#include <array>
#include <cmath>

namespace gasket {

enum class PackingVariant { Original, Improved };

struct PackingResult {
  int k = 0;
  PackingVariant variant = PackingVariant::Original;
  double estimate = 0;        // P_k
  double lower = 0;           // P_k^inf
  double upper = 0;           // P_k^sup = K_k^P * P_k
  double radius = 0;          // d_k
  double convergence = 0;     // K_k^P
  LatticePoint center;
  std::int64_t sq_scaled = 0;
  MassCount mass;             // mu_k(U(x_k, d_k)) as counts
};

struct PackingOptions {
  PackingVariant variant = PackingVariant::Original;
  bool full_sweep = false;
  int workers = 1;
};

/// Vertices of the feasible rhombus R: T plus its reflection across the
/// bottom edge, exact at level k. The fourth vertex has a negative b.
inline std::array<LatticePoint, 4> rhombus_vertices(int k) {
  check_level(k);
  return {{{0, 0, k}, {pow2(k), 0, k}, {pow2(k - 1), pow2(k - 1), k}, {pow2(k - 1), -pow2(k - 1), k}}};
}

/// d_x^2 * 4^k: the maximum over the rhombus vertices (the maximum of a
/// convex function over a convex polygon sits at a vertex).
inline std::int64_t max_sq_dist_to_rhombus(const LatticePoint& x) {
  std::int64_t best = 0;
  for (const LatticePoint& v : rhombus_vertices(x.level))
    best = std::max(best, sq_distance(x, v).value);
  return best;
}

/// dist(x, boundary of R)^2 * 4^k for x inside R: the minimum over the four
/// edge lines. The edges run along the lattice directions, so the distance
/// to the line through z_0 and z_2 is sqrt(3) * (a - b) / 2^(k+1) and
/// likewise for the others; (a + b) is even on the gasket lattice, so the
/// squared value 3 * ((a -+ b) / 2)^2 is an exact integer. This is the
/// admissible-radius cap: an open ball stays inside the feasible rhombus
/// exactly when its radius is at most this distance.
inline std::int64_t rhombus_boundary_sq_dist(const LatticePoint& x) {
  const std::int64_t full = pow2(x.level);
  if ((x.a + x.b) % 2 != 0) throw domain_error("rhombus_boundary_sq_dist: (a + b) must be even");
  const std::int64_t m = std::min(std::min(std::abs(x.a - x.b), std::abs(x.a + x.b)),
                                  std::min(std::abs(full - x.a - x.b), std::abs(full - x.a + x.b)));
  return 3 * (m / 2) * (m / 2);
}

inline int packing_min_level(PackingVariant v) { return v == PackingVariant::Original ? 6 : 4; }

inline ExactRadius packing_lower_radius(int k, PackingVariant v) {
  const int drop = v == PackingVariant::Original ? 2 : 1;  // d_0 = sqrt(3)/16 - 2^(drop - k)
  return ExactRadius::sqrt_of(Rational(3) / 256).shifted(-(Rational(pow2(drop)) / pow2(k)));
}

inline double packing_convergence_factor(int k, PackingVariant v) {
  const int e = v == PackingVariant::Original ? 6 : 5;
  return std::pow(1.0 - std::ldexp(1.0, e - k) / std::sqrt(3.0), -kDimension);
}

inline PackingResult compute_packing(const ApproxSet& set, const PackingOptions& opts = {}) {
  const int k = set.level();
  if (k < packing_min_level(opts.variant))
    throw domain_error("compute_packing: needs k >= " + std::to_string(packing_min_level(opts.variant)));

  const RadiusWindow lo_only(packing_lower_radius(k, opts.variant), ExactRadius::from_rational(4));
  const auto bounds = lo_only.scaled_bounds(pow4(k), 4 * pow4(k));

  // Candidate radii come from points outside S_2; the two vertices S_2
  // shares with S_0 and S_1 stay eligible.
  const std::int64_t quarter = pow2(k - 2);
  const std::int64_t full = pow2(k);
  auto outside_s2 = [quarter, full](std::int64_t a, std::int64_t b) {
    const bool in_t2 = b >= quarter && b <= a && b <= full - a;
    if (!in_t2) return true;
    return b == quarter && (a == quarter || a == 3 * quarter);
  };

  SweepRequest req;
  req.maximize = true;
  req.open_balls = true;
  req.lo_scaled = bounds.lo;
  req.hi_per_center = [](const LatticePoint& x) { return rhombus_boundary_sq_dist(x); };
  req.radius_candidate = outside_s2;
  req.workers = opts.workers;

  const std::vector<LatticePoint> centers =
      opts.full_sweep ? cylinder_subset(set, {}) : cylinder_subset(set, make_word({0, 1}));
  const SweepBest best = density_sweep(set, centers, req);
  if (!best.found) throw domain_error("compute_packing: no candidate ball with positive mass");

  PackingResult out;
  out.k = k;
  out.variant = opts.variant;
  out.estimate = best.objective;
  out.center = best.center;
  out.sq_scaled = best.sq_scaled;
  out.mass = best.mass;
  out.radius = std::sqrt(static_cast<double>(best.sq_scaled)) / static_cast<double>(pow2(k));
  out.convergence = packing_convergence_factor(k, opts.variant);
  out.upper = out.convergence * out.estimate;

  // P_k^inf = (2 d_k)^s / mu_k(U(x_k, d_k + 2^-k))
  const ExactRadius grown =
      ExactRadius::sqrt_of(Rational(best.sq_scaled) / pow4(k)).shifted(Rational(1) / pow2(k));
  const Rational outer = ball_mass(set, {ScaledPoint::from_lattice(best.center), grown, false});
  out.lower = diameter_pow(best.sq_scaled, pow4(k)) / to_double(outer);
  return out;
}

}  // namespace gasket
