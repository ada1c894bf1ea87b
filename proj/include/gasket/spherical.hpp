#pragma once

// Spherical-measure estimator: sweeps ball radii at the barycentre of T,
// maximising the density theta^s(x_b, d) over candidate radii d = |x - x_b|
// with x in A_k int S_2 and x_1 <= 1/2 (a fundamental domain for the
// symmetries fixing x_b). Densities rather than inverse densities are
// optimised because balls with radii near sqrt(3)/12 have almost no mass.
// The derived quantity 1 / C_sph_k is an upper bound for the spherical
// measure plus a conjectured estimate, never the measure's value.

#include "gasket/profile.hpp"
#include "gasket/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace gasket {

struct SphericalResult {
  int k = 0;
  double estimate = 0;        // C_sph_k = max density
  double lower = 0;           // underline C
  double upper = 0;           // overline C = K_sph * C_sph_k
  double radius = 0;          // D_k
  double convergence = 0;     // K_sph = (1 + 2^(2-k) * sqrt(3))^s
  std::int64_t sq_scaled = 0; // exact D_k^2 * (9 * 4^k)
  std::int64_t scale = 1;     // 9 * 4^k
  MassCount mass;             // mu_k(B(x_b, D_k)) as counts
  double measure_upper = 0;   // 1 / lower: upper bound for the spherical measure
  double measure_estimate = 0;// 1 / estimate: conjectured value
};

inline RadiusWindow spherical_window() {
  // [sqrt(3)/12, sqrt(3)/3]: inscribed circle of the central hole to the
  // circumscribed circle of T.
  return RadiusWindow(ExactRadius::sqrt_of(Rational(1) / 48), ExactRadius::sqrt_of(Rational(1) / 3));
}

inline double spherical_convergence_factor(int k) {
  return std::pow(1.0 + std::ldexp(1.0, 2 - k) * std::sqrt(3.0), kDimension);
}

struct SphericalOptions {
  bool full_sweep = false;  // candidates from all of A_k instead of the fundamental domain
};

inline SphericalResult compute_spherical(const ApproxSet& set, const SphericalOptions& opts = {}) {
  const int k = set.level();
  if (k < 3) throw domain_error("compute_spherical: needs k >= 3");

  const ScaledPoint xb = ScaledPoint::barycentre(k);
  const std::int64_t S = xb.scale();

  // One pass over the whole set: sorted scaled squared distances give every
  // cumulative mass; the candidate subset gives the feasible radii.
  std::vector<std::int64_t> all;
  all.reserve(set.size());
  std::vector<std::int64_t> candidates;
  const std::int64_t quarter = pow2(k - 2);
  const std::int64_t half = pow2(k - 1);
  const std::int64_t full = pow2(k);
  for (const PackedPoint& p : set.points()) {
    const std::int64_t D = xb.sq_dist_scaled(p.a, p.b);
    all.push_back(D);
    const bool in_s2 = p.b >= quarter && p.b <= p.a && p.b <= full - p.a;
    if (opts.full_sweep || (in_s2 && p.a <= half)) candidates.push_back(D);
  }
  std::sort(all.begin(), all.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  if (candidates.empty()) throw domain_error("compute_spherical: no candidate radii");

  std::array<std::int64_t, 3> corner_ds{};
  {
    const auto zs = corner_points(k);
    for (int i = 0; i < 3; ++i) corner_ds[i] = xb.sq_dist_scaled(zs[i].a, zs[i].b);
    std::sort(corner_ds.begin(), corner_ds.end());
  }

  // Every candidate radius must already lie inside the window; assert
  // rather than filter.
  const RadiusWindow window = spherical_window();
  if (!window.contains_scaled(candidates.front(), S) || !window.contains_scaled(candidates.back(), S))
    throw domain_error("compute_spherical: candidate radius escaped [sqrt(3)/12, sqrt(3)/3]");

  const double inv_pow3k = 1.0 / static_cast<double>(pow3(k));
  double best_obj = -1;
  std::int64_t best_d = -1;
  MassCount best_mass;
  std::size_t cursor = 0;
  std::int64_t corner_cursor = 0;
  for (const std::int64_t D : candidates) {
    while (cursor < all.size() && all[cursor] <= D) ++cursor;
    while (corner_cursor < 3 && corner_ds[static_cast<std::size_t>(corner_cursor)] <= D) ++corner_cursor;
    const MassCount mc{static_cast<std::int64_t>(cursor), corner_cursor};
    const double dens = static_cast<double>(mc.weight_numerator()) * inv_pow3k / diameter_pow(D, S);
    if (best_d < 0 || dens > best_obj) {  // ties keep the smaller radius
      best_obj = dens;
      best_d = D;
      best_mass = mc;
    }
  }

  SphericalResult out;
  out.k = k;
  out.estimate = best_obj;
  out.sq_scaled = best_d;
  out.scale = S;
  out.mass = best_mass;
  out.radius = std::sqrt(static_cast<double>(best_d) / static_cast<double>(S));
  out.convergence = spherical_convergence_factor(k);
  out.upper = out.convergence * out.estimate;

  // underline C = mu_k(B(x_b, D_k - 2^-k)) / (2 D_k)^s
  const ExactRadius shrunk =
      ExactRadius::sqrt_of(Rational(best_d) / S).shifted(-Rational(1) / pow2(k));
  const Rational inner = ball_mass(set, {xb, shrunk, true});
  out.lower = to_double(inner) / diameter_pow(best_d, S);

  out.measure_estimate = 1.0 / out.estimate;
  out.measure_upper = 1.0 / out.lower;
  return out;
}

/// Density curve at the barycentre over the full window (the data behind
/// the published density plot); its maximum equals the estimator output.
inline DistanceProfile barycentre_profile(const ApproxSet& set) {
  if (set.level() < 3) throw domain_error("barycentre_profile: needs k >= 3");
  return distance_profile(set, ScaledPoint::barycentre(set.level()), spherical_window());
}

}  // namespace gasket
