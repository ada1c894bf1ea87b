#pragma once

// Exact mu_k masses of closed and open balls. Masses are pure point counts:
// every point weighs 2/3^k except the three outer vertices at 1/3^k, so a
// ball's mass is (2*total - corners) / 3^k.

#include "gasket/approx_set.hpp"
#include "gasket/exact.hpp"
#include "gasket/lattice.hpp"

#include <array>
#include <cstdint>

namespace gasket {

struct MassCount {
  std::int64_t total = 0;    // all points in the ball
  std::int64_t corner = 0;   // of which outer vertices

  std::int64_t weight_numerator() const { return 2 * total - corner; }

  friend bool operator==(const MassCount&, const MassCount&) = default;
};

inline Rational mass_to_rational(const MassCount& m, int k) {
  return Rational(m.weight_numerator()) / pow3(k);
}

inline double mass_to_double(const MassCount& m, int k) {
  return static_cast<double>(m.weight_numerator()) / static_cast<double>(pow3(k));
}

struct BallSpec {
  ScaledPoint center;
  ExactRadius radius;
  bool closed = true;
};

/// Largest integer D in [0, max_sq] with sqrt(D/S) <= r (closed) or < r
/// (open); -1 when even D = 0 fails. Converts an exact radius into a pure
/// integer membership threshold.
inline std::int64_t scaled_sq_threshold(const ExactRadius& r, std::int64_t S, std::int64_t max_sq, bool closed) {
  auto pass = [&](std::int64_t D) {
    const int c = compare_scaled_distance(D, S, r);
    return closed ? c <= 0 : c < 0;
  };
  if (!pass(0)) return -1;
  if (pass(max_sq)) return max_sq;
  std::int64_t good = 0, bad = max_sq;
  while (bad - good > 1) {
    const std::int64_t mid = good + (bad - good) / 2;
    (pass(mid) ? good : bad) = mid;
  }
  return good;
}

namespace detail {

/// Min/max scaled squared distance from a scaled center to the cell box
/// [a0,a1] x [b0,b1] under the metric dx^2 + 3*dy^2.
struct CellDistance {
  std::int64_t min_sq;
  std::int64_t max_sq;
};

inline CellDistance cell_distance(const ScaledPoint& c, std::int64_t a0, std::int64_t a1, std::int64_t b0,
                                  std::int64_t b1) {
  const std::int64_t xa0 = c.den * a0, xa1 = c.den * a1;
  const std::int64_t yb0 = c.den * b0, yb1 = c.den * b1;
  const std::int64_t dxlo = xa0 > c.x ? xa0 - c.x : (c.x > xa1 ? c.x - xa1 : 0);
  const std::int64_t dylo = yb0 > c.y ? yb0 - c.y : (c.y > yb1 ? c.y - yb1 : 0);
  const std::int64_t dxhi = std::max(c.x - xa0, xa1 - c.x);
  const std::int64_t dyhi = std::max(c.y - yb0, yb1 - c.y);
  return {dxlo * dxlo + 3 * dylo * dylo, dxhi * dxhi + 3 * dyhi * dyhi};
}

/// Upper bound for any scaled squared distance from this center to the set.
inline std::int64_t max_scaled_sq(const ApproxSet& set, const ScaledPoint& c) {
  const std::int64_t full = pow2(set.level());
  const auto d = cell_distance(c, 0, full, 0, full / 2);
  return d.max_sq;
}

}  // namespace detail

/// Counts the points of the set with scaled squared distance <= threshold,
/// using the grid to skip and bulk-add cells. threshold < 0 counts nothing.
inline MassCount count_within(const ApproxSet& set, const ScaledPoint& center, std::int64_t threshold) {
  MassCount out;
  if (threshold < 0) return out;
  const int shift = set.grid_shift();
  const std::int64_t cap_a = pow2(set.level());
  for (int cb = 0; cb < set.grid_rows(); ++cb) {
    const std::int64_t b0 = static_cast<std::int64_t>(cb) << shift;
    const std::int64_t b1 = std::min(((static_cast<std::int64_t>(cb) + 1) << shift) - 1, cap_a / 2);
    for (int ca = 0; ca < set.grid_cols(); ++ca) {
      const std::uint32_t n = set.cell_count(ca, cb);
      if (n == 0) continue;
      const std::int64_t a0 = static_cast<std::int64_t>(ca) << shift;
      const std::int64_t a1 = std::min(((static_cast<std::int64_t>(ca) + 1) << shift) - 1, cap_a);
      const auto d = detail::cell_distance(center, a0, a1, b0, b1);
      if (d.min_sq > threshold) continue;
      if (d.max_sq <= threshold) {
        out.total += n;
        continue;
      }
      for (std::uint32_t idx : set.cell_indices(ca, cb)) {
        const PackedPoint& p = set.points()[idx];
        if (center.sq_dist_scaled(p.a, p.b) <= threshold) ++out.total;
      }
    }
  }
  for (const LatticePoint& z : corner_points(set.level()))
    if (center.sq_dist_scaled(z.a, z.b) <= threshold) ++out.corner;
  return out;
}

inline MassCount ball_count(const ApproxSet& set, const BallSpec& ball) {
  const ScaledPoint c = ball.center.level == set.level() ? ball.center : ball.center.at_level(set.level());
  const std::int64_t S = c.scale();
  const std::int64_t T = scaled_sq_threshold(ball.radius, S, detail::max_scaled_sq(set, c), ball.closed);
  return count_within(set, c, T);
}

/// Exact mu_k measure of a closed or open ball.
inline Rational ball_mass(const ApproxSet& set, const BallSpec& ball) {
  return mass_to_rational(ball_count(set, ball), set.level());
}

}  // namespace gasket
