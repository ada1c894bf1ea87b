#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "gasket/spherical.hpp"
#include "gasket/density.hpp"

#include <algorithm>
#include <cmath>

using namespace gasket;

TEST_CASE("preconditions and window assertion") {
  CHECK_THROWS_AS(compute_spherical(ApproxSet::generate(2)), domain_error);
  const SphericalResult r = compute_spherical(ApproxSet::generate(3));
  CHECK(r.estimate > 0);
}

TEST_CASE("bracket ordering and convergence factor") {
  double prev_factor = 10;
  for (int k = 3; k <= 9; ++k) {
    const SphericalResult r = compute_spherical(ApproxSet::generate(k));
    INFO("k = ", k);
    CHECK(r.lower <= r.estimate);
    CHECK(r.estimate <= r.upper);
    CHECK(r.convergence > 1.0);
    CHECK(r.convergence < prev_factor);  // K_sph decreases towards 1
    CHECK(r.upper == doctest::Approx(r.convergence * r.estimate));
    prev_factor = r.convergence;
  }
}

TEST_CASE("optimal radius lies in [sqrt(3)/12, sqrt(3)/3]") {
  for (int k = 3; k <= 9; ++k) {
    const SphericalResult r = compute_spherical(ApproxSet::generate(k));
    CHECK(spherical_window().contains_scaled(r.sq_scaled, r.scale));
    CHECK(r.radius >= std::sqrt(3.0) / 12 - 1e-12);
    CHECK(r.radius <= std::sqrt(3.0) / 3 + 1e-12);
  }
}

TEST_CASE("symmetry reduction: all-points candidates equal the fundamental domain") {
  for (int k = 3; k <= 9; ++k) {
    const ApproxSet set = ApproxSet::generate(k);
    const SphericalResult restricted = compute_spherical(set);
    const SphericalResult full = compute_spherical(set, {true});
    INFO("k = ", k);
    CHECK(std::abs(full.estimate - restricted.estimate) <= 1e-12 * restricted.estimate);
    CHECK(full.sq_scaled == restricted.sq_scaled);  // the exact radius set coincides
  }
}

TEST_CASE("profile maximum equals the estimator output") {
  for (int k : {5, 8}) {
    const ApproxSet set = ApproxSet::generate(k);
    const SphericalResult r = compute_spherical(set);
    const DistanceProfile profile = barycentre_profile(set);
    REQUIRE_FALSE(profile.entries.empty());
    double best = 0;
    for (std::size_t i = 0; i < profile.entries.size(); ++i) {
      const double dens = mass_to_double(profile.entries[i].closed, k) /
                          diameter_pow(profile.entries[i].sq_scaled, profile.scale);
      best = std::max(best, dens);
    }
    CHECK(best == doctest::Approx(r.estimate).epsilon(1e-12));
  }
}

TEST_CASE("k = 8 maximum matches a gridless brute-force sweep") {
  const int k = 8;
  const ApproxSet set = ApproxSet::generate(k);
  const ScaledPoint xb = ScaledPoint::barycentre(k);
  double best = 0;
  std::int64_t best_d = 0;
  for (const PackedPoint& cand : set.points()) {
    const std::int64_t D = xb.sq_dist_scaled(cand.a, cand.b);
    MassCount mc;
    for (const PackedPoint& p : set.points()) {
      if (xb.sq_dist_scaled(p.a, p.b) <= D) {
        ++mc.total;
        if (set.is_corner(p)) ++mc.corner;
      }
    }
    const double dens = mass_to_double(mc, k) / diameter_pow(D, xb.scale());
    if (dens > best) {
      best = dens;
      best_d = D;
    }
  }
  const SphericalResult r = compute_spherical(set);
  CHECK(r.estimate == doctest::Approx(best).epsilon(1e-13));
  CHECK(r.sq_scaled == best_d);
}

TEST_CASE("derived measure quantities") {
  const SphericalResult r = compute_spherical(ApproxSet::generate(7));
  CHECK(r.measure_estimate == doctest::Approx(1.0 / r.estimate));
  CHECK(r.measure_upper == doctest::Approx(1.0 / r.lower));
  CHECK(r.measure_upper >= r.measure_estimate);
}
