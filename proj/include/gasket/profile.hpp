#pragma once

// Per-center distance profiles: the sorted list of feasible distances with
// exact cumulative open/closed masses. The position of a distance in the
// list gives the ball measure directly.

#include "gasket/density.hpp"
#include "gasket/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <ostream>
#include <vector>

namespace gasket {

struct ProfileEntry {
  std::int64_t sq_scaled = 0;  // real distance^2 = sq_scaled / scale
  MassCount closed;            // cumulative mass with distance <= this entry
  MassCount open;              // cumulative mass with distance < this entry
};

struct DistanceProfile {
  ScaledPoint center;
  std::int64_t scale = 1;
  int level = 1;
  std::vector<ProfileEntry> entries;  // ascending sq_scaled, deduplicated

  double radius(std::size_t i) const {
    return std::sqrt(static_cast<double>(entries[i].sq_scaled) / static_cast<double>(scale));
  }
};

/// Candidate-point filter; receives lattice coordinates at the set level.
using PointFilter = std::function<bool(std::int64_t a, std::int64_t b)>;

/// Profile of all distinct distances from `center` to the (filtered) set
/// whose radius lies inside `window`. Cumulative masses always count the
/// WHOLE set; the filter only selects which distances become entries.
inline DistanceProfile distance_profile(const ApproxSet& set, const ScaledPoint& center,
                                        const RadiusWindow& window, const PointFilter& filter = nullptr) {
  const ScaledPoint c = center.level == set.level() ? center : center.at_level(set.level());
  const std::int64_t S = c.scale();
  DistanceProfile out;
  out.center = c;
  out.scale = S;
  out.level = set.level();

  std::vector<std::int64_t> all;
  all.reserve(set.size());
  std::vector<std::int64_t> candidates;
  for (const PackedPoint& p : set.points()) {
    const std::int64_t D = c.sq_dist_scaled(p.a, p.b);
    all.push_back(D);
    if (!filter || filter(p.a, p.b)) candidates.push_back(D);
  }
  std::sort(all.begin(), all.end());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::array<std::int64_t, 3> corner_ds{};
  {
    const auto zs = corner_points(set.level());
    for (int i = 0; i < 3; ++i) corner_ds[i] = c.sq_dist_scaled(zs[i].a, zs[i].b);
    std::sort(corner_ds.begin(), corner_ds.end());
  }
  auto corners_leq = [&](std::int64_t D) {
    return static_cast<std::int64_t>(std::upper_bound(corner_ds.begin(), corner_ds.end(), D) - corner_ds.begin());
  };
  auto corners_lt = [&](std::int64_t D) {
    return static_cast<std::int64_t>(std::lower_bound(corner_ds.begin(), corner_ds.end(), D) - corner_ds.begin());
  };

  const auto bounds = window.scaled_bounds(S, all.empty() ? 0 : all.back());
  if (bounds.empty()) return out;

  const auto lo_it = std::lower_bound(candidates.begin(), candidates.end(), bounds.lo);
  const auto hi_it = std::upper_bound(candidates.begin(), candidates.end(), bounds.hi);
  out.entries.reserve(static_cast<std::size_t>(hi_it - lo_it));
  for (auto it = lo_it; it != hi_it; ++it) {
    const std::int64_t D = *it;
    ProfileEntry e;
    e.sq_scaled = D;
    e.closed.total = std::upper_bound(all.begin(), all.end(), D) - all.begin();
    e.closed.corner = corners_leq(D);
    e.open.total = std::lower_bound(all.begin(), all.end(), D) - all.begin();
    e.open.corner = corners_lt(D);
    out.entries.push_back(e);
  }
  return out;
}

/// CSV columns: d, mass_open, mass_closed, density, inverse_density.
inline void write_profile_csv(std::ostream& os, const DistanceProfile& profile) {
  os << "d,mass_open,mass_closed,density,inverse_density\n";
  char buf[256];
  for (std::size_t i = 0; i < profile.entries.size(); ++i) {
    const ProfileEntry& e = profile.entries[i];
    const double d = profile.radius(i);
    const double mo = mass_to_double(e.open, profile.level);
    const double mc = mass_to_double(e.closed, profile.level);
    const double pw = diameter_pow(e.sq_scaled, profile.scale);
    const double dens = mc / pw;
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g\n", d, mo, mc, dens, 1.0 / dens);
    os << buf;
  }
}

}  // namespace gasket
