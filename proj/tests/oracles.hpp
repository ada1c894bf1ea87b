#pragma once

// Test-only brute-force oracles, kept independent of the library's map
// machinery: points are produced by the direct summation formula for the
// composed similitudes, and ball masses by naive rational rescans.

#include "gasket/approx_set.hpp"
#include "gasket/exact.hpp"
#include "gasket/lattice.hpp"

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Coord = std::pair<std::int64_t, std::int64_t>;

// f_{i_1...i_{k-1}}(z_j) in level-k lattice coordinates, from the closed
// form f_w(p) = p / 2^|w| + sum_t v_{w_t} / 2^(t-1). With v_i in quarter
// units ((0,0), (2,0), (1,1)) this collapses to integer sums.
inline Coord code_point(const std::vector<int>& code, int j, int k) {
  static const std::int64_t vx[3] = {0, 2, 1};
  static const std::int64_t vy[3] = {0, 0, 1};
  std::int64_t a = vx[j];
  std::int64_t b = vy[j];
  for (int t = 1; t <= static_cast<int>(code.size()); ++t) {
    const std::int64_t scale = std::int64_t{1} << (k - t - 1);
    a += vx[code[static_cast<std::size_t>(t - 1)]] * scale;
    b += vy[code[static_cast<std::size_t>(t - 1)]] * scale;
  }
  return {a, b};
}

/// Enumerates all 3^k codes (i in M^{k-1}, j in M); the value counts how
/// many codes reach each point, which times 3^-k is its mu_k weight.
inline std::map<Coord, int> enumerate_codes(int k) {
  std::map<Coord, int> mult;
  std::vector<int> code(static_cast<std::size_t>(k - 1), 0);
  while (true) {
    for (int j = 0; j < 3; ++j) ++mult[code_point(code, j, k)];
    int pos = k - 2;
    while (pos >= 0 && code[static_cast<std::size_t>(pos)] == 2) code[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++code[static_cast<std::size_t>(pos)];
  }
  return mult;
}

/// Naive O(n) exact rescan of a closed/open ball with a rational squared
/// radius; deliberately avoids the library's threshold search.
inline gasket::Rational ball_mass_rescan(const gasket::ApproxSet& set, const gasket::ScaledPoint& center,
                                         const gasket::Rational& sq_radius, bool closed) {
  const gasket::Rational scale = center.den * center.den * gasket::Rational(gasket::pow4(set.level()));
  gasket::Rational mass = 0;
  const gasket::Rational w_corner = gasket::Rational(1) / gasket::pow3(set.level());
  const gasket::Rational w_inner = 2 * w_corner;
  for (const gasket::PackedPoint& p : set.points()) {
    const gasket::Rational d2 = gasket::Rational(center.sq_dist_scaled(p.a, p.b)) / scale;
    const bool inside = closed ? d2 <= sq_radius : d2 < sq_radius;
    if (inside) mass += set.is_corner(p) ? w_corner : w_inner;
  }
  return mass;
}

/// Exact squared distance from a scaled point to the closed triangle T_w,
/// as a rational on the real scale. Corners of T_w live at level |w| + 1,
/// so everything is embedded into a common level first. Uses the fact that
/// every edge of these triangles runs along a lattice direction.
inline gasket::Rational sq_dist_to_triangle(const gasket::ScaledPoint& center, const gasket::Word& w) {
  using gasket::Rational;
  const int level = std::max(center.level, static_cast<int>(w.size()) + 1);
  const gasket::ScaledPoint c = center.at_level(level);
  const auto base = gasket::corner_points(1);
  const gasket::LatticePoint z0 = gasket::apply_word(w, base[0]).at_level(level);
  const gasket::LatticePoint z1 = gasket::apply_word(w, base[1]).at_level(level);
  const gasket::LatticePoint z2 = gasket::apply_word(w, base[2]).at_level(level);
  const std::int64_t q = c.den;
  const bool inside = q * z0.b <= c.y && (c.y - q * z0.b) <= (c.x - q * z0.a) &&
                      (c.y - q * z0.b) <= (q * z1.a - c.x);
  if (inside) return 0;
  const Rational S = Rational(q) * q * gasket::pow4(level);
  auto seg = [&](const gasket::LatticePoint& u, const gasket::LatticePoint& v) -> Rational {
    // Metric dx^2 + 3 dy^2.
    const Rational ux = q * u.a - c.x, uy = q * u.b - c.y;
    const Rational dx = q * (v.a - u.a), dy = q * (v.b - u.b);
    const Rational denom = dx * dx + 3 * dy * dy;
    Rational t = -(ux * dx + 3 * uy * dy) / denom;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    const Rational px = ux + t * dx, py = uy + t * dy;
    return (px * px + 3 * py * py) / S;
  };
  Rational best = seg(z0, z1);
  const Rational e2 = seg(z0, z2);
  if (e2 < best) best = e2;
  const Rational e3 = seg(z1, z2);
  if (e3 < best) best = e3;
  return best;
}

}  // namespace oracle
