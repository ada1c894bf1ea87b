#pragma once

// Integer lattice for the gasket at level k: a point (a, b) stands for the
// real point (a / 2^k, b * sqrt(3) / 2^k). Squared distances become the
// exact integer da^2 + 3*db^2, so ball membership and boundary counting
// never touch floating point.

#include "gasket/exact.hpp"

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>

namespace gasket {

// Squared distances at level k are bounded by 4 * 4^k; with the barycentre
// denominator cleared they reach 36 * 4^k, which stays inside int64 through
// level 20. Anything deeper must fail loudly.
inline constexpr int kMaxLevel = 20;

inline void check_level(int k) {
  if (k < 1) throw domain_error("level must be >= 1");
  if (k > kMaxLevel) throw capacity_error("level " + std::to_string(k) + " exceeds the exact int64 capacity (max " + std::to_string(kMaxLevel) + ")");
}

inline std::int64_t pow2(int e) { return std::int64_t{1} << e; }
inline std::int64_t pow4(int e) { return std::int64_t{1} << (2 * e); }
inline std::int64_t pow3(int e) {
  std::int64_t v = 1;
  while (e-- > 0) v *= 3;
  return v;
}

struct LatticePoint {
  std::int64_t a = 0;
  std::int64_t b = 0;
  int level = 1;

  friend bool operator==(const LatticePoint&, const LatticePoint&) = default;

  /// Lexicographic (a, b) order; only meaningful within one level.
  friend bool operator<(const LatticePoint& p, const LatticePoint& q) {
    return p.a != q.a ? p.a < q.a : p.b < q.b;
  }

  /// Re-expresses the point at a deeper level (same real coordinates).
  LatticePoint at_level(int k) const {
    if (k < level) throw domain_error("at_level: cannot coarsen a lattice point");
    check_level(k);
    const std::int64_t f = pow2(k - level);
    return {a * f, b * f, k};
  }

  bool in_unit_triangle() const {
    return a >= 0 && b >= 0 && b <= a && b <= pow2(level) - a;
  }

  double x() const { return static_cast<double>(a) / static_cast<double>(pow2(level)); }
  double y() const { return static_cast<double>(b) * std::sqrt(3.0) / static_cast<double>(pow2(level)); }
};

/// The three outer vertices z_0, z_1, z_2 at level k.
inline std::array<LatticePoint, 3> corner_points(int k) {
  check_level(k);
  return {{{0, 0, k}, {pow2(k), 0, k}, {pow2(k - 1), pow2(k - 1), k}}};
}

enum class WeightClass : std::uint8_t { Corner = 0, Interior = 1 };

struct SqDistance {
  std::int64_t value = 0;  // da^2 + 3*db^2
  int level = 1;           // real distance = sqrt(value) / 2^level

  double real() const { return std::sqrt(static_cast<double>(value)) / static_cast<double>(pow2(level)); }
};

inline SqDistance sq_distance(const LatticePoint& p, const LatticePoint& q) {
  if (p.level != q.level) throw domain_error("sq_distance: points at different levels");
  const std::int64_t da = p.a - q.a;
  const std::int64_t db = p.b - q.b;
  return {da * da + 3 * db * db, p.level};
}

/// An exact point with rational coordinates in the (1, sqrt(3)) basis,
/// stored as lattice units over a common denominator: the real point is
/// (x / (den * 2^level), y * sqrt(3) / (den * 2^level)). Covers the
/// barycentre (den = 3) as well as every lattice point (den = 1).
struct ScaledPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;
  std::int64_t den = 1;
  int level = 1;

  static ScaledPoint from_lattice(const LatticePoint& p) { return {p.a, p.b, 1, p.level}; }

  /// Barycentre of T: (1/2, sqrt(3)/6).
  static ScaledPoint barycentre(int k) {
    check_level(k);
    return {3 * pow2(k - 1), pow2(k - 1), 3, k};
  }

  /// From real coordinates (xr, yr * sqrt(3)).
  static ScaledPoint from_rationals(const Rational& xr, const Rational& yr, int k) {
    check_level(k);
    using boost::multiprecision::denominator;
    using boost::multiprecision::numerator;
    const Rational sx = xr * pow2(k);
    const Rational sy = yr * pow2(k);
    const BigInt q = boost::multiprecision::lcm(denominator(sx), denominator(sy));
    const BigInt bx = numerator(sx) * (q / denominator(sx));
    const BigInt by = numerator(sy) * (q / denominator(sy));
    // Keep den * 2^level <= 2^30 so squared scaled distances fit in int64.
    if (q * pow2(k) > (BigInt(1) << 30) || abs(bx) > (BigInt(1) << 31) || abs(by) > (BigInt(1) << 31))
      throw capacity_error("exact point denominator too large for int64 distances at this level");
    return {bx.convert_to<std::int64_t>(), by.convert_to<std::int64_t>(), q.convert_to<std::int64_t>(), k};
  }

  ScaledPoint at_level(int k) const {
    if (k < level) throw domain_error("at_level: cannot coarsen an exact point");
    check_level(k);
    const std::int64_t f = pow2(k - level);
    return {x * f, y * f, den, k};
  }

  /// Scale S such that real distance^2 to lattice points = D / S.
  std::int64_t scale() const { return den * den * pow4(level); }

  /// Exact scaled squared distance to a lattice point of the same level.
  std::int64_t sq_dist_scaled(std::int64_t a, std::int64_t b) const {
    const std::int64_t dx = den * a - x;
    const std::int64_t dy = den * b - y;
    return dx * dx + 3 * dy * dy;
  }

  bool is_lattice() const { return den == 1; }
  LatticePoint as_lattice() const {
    if (den != 1) throw domain_error("as_lattice: point has a nontrivial denominator");
    return {x, y, level};
  }

  double real_x() const { return static_cast<double>(x) / static_cast<double>(den * pow2(level)); }
  double real_y() const { return static_cast<double>(y) * std::sqrt(3.0) / static_cast<double>(den * pow2(level)); }

  Rational rational_x() const { return Rational(x) / (Rational(den) * pow2(level)); }
  Rational rational_y() const { return Rational(y) / (Rational(den) * pow2(level)); }
};

}  // namespace gasket
