#pragma once

// The discrete approximation A_k: the k-th iterate of the Hutchinson
// operator applied to the three outer vertices, held on the exact integer
// lattice with a uniform bucket grid for radius-bounded scans.

#include "gasket/lattice.hpp"
#include "gasket/maps.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace gasket {

struct PackedPoint {
  std::int32_t a = 0;
  std::int32_t b = 0;

  friend bool operator==(const PackedPoint&, const PackedPoint&) = default;
  friend bool operator<(const PackedPoint& p, const PackedPoint& q) {
    return p.a != q.a ? p.a < q.a : p.b < q.b;
  }
};

/// A_k with mu_k weight classes and a spatial bucket grid. Immutable after
/// construction; safe to share read-only across workers.
class ApproxSet {
 public:
  /// Builds A_k by iterating the three similitudes with exact dedup.
  /// grid_log picks the bucket side 2^-grid_log (default 1/32).
  static ApproxSet generate(int k, int grid_log = kDefaultGridLog) {
    check_level(k);
    std::vector<PackedPoint> pts = {{0, 0}, {1, 1}, {2, 0}};  // A_1, lex order
    std::vector<PackedPoint> next;
    for (int j = 1; j < k; ++j) {
      const std::int32_t full = static_cast<std::int32_t>(pow2(j));
      const std::int32_t half = static_cast<std::int32_t>(pow2(j - 1));
      next.clear();
      next.reserve(3 * pts.size());
      for (const PackedPoint& p : pts) {
        next.push_back({p.a, p.b});                      // f_0
        next.push_back({p.a + full, p.b});               // f_1
        next.push_back({p.a + half, p.b + half});        // f_2
      }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      pts.swap(next);
    }
    return ApproxSet(k, std::move(pts), grid_log);
  }

  /// Rebuilds a set from a raw point list (cache loads); validates order
  /// and uniqueness.
  static ApproxSet from_points(int k, std::vector<PackedPoint> pts, int grid_log = kDefaultGridLog) {
    check_level(k);
    std::sort(pts.begin(), pts.end());
    if (std::adjacent_find(pts.begin(), pts.end()) != pts.end())
      throw domain_error("ApproxSet: duplicate lattice coordinates");
    return ApproxSet(k, std::move(pts), grid_log);
  }

  int level() const { return level_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<PackedPoint>& points() const { return points_; }

  LatticePoint point(std::size_t i) const { return {points_[i].a, points_[i].b, level_}; }

  bool is_corner(const PackedPoint& p) const {
    const std::int64_t full = pow2(level_);
    const std::int64_t half = pow2(level_ - 1);
    return (p.a == 0 && p.b == 0) || (p.a == full && p.b == 0) || (p.a == half && p.b == half);
  }

  WeightClass weight_class(const PackedPoint& p) const {
    return is_corner(p) ? WeightClass::Corner : WeightClass::Interior;
  }

  // --- grid access -------------------------------------------------------

  int grid_shift() const { return shift_; }
  int grid_cols() const { return cols_; }
  int grid_rows() const { return rows_; }

  std::span<const std::uint32_t> cell_indices(int ca, int cb) const {
    const std::size_t c = static_cast<std::size_t>(cb) * cols_ + ca;
    return {cell_points_.data() + cell_start_[c], cell_start_[c + 1] - cell_start_[c]};
  }

  std::uint32_t cell_count(int ca, int cb) const {
    const std::size_t c = static_cast<std::size_t>(cb) * cols_ + ca;
    return cell_start_[c + 1] - cell_start_[c];
  }

  static constexpr int kDefaultGridLog = 5;

 private:
  ApproxSet(int k, std::vector<PackedPoint> pts, int grid_log)
      : level_(k), points_(std::move(pts)) {
    if (grid_log < 0) grid_log = 0;
    shift_ = std::max(level_ - grid_log, 0);
    cols_ = static_cast<int>((pow2(level_) >> shift_) + 1);
    rows_ = static_cast<int>((pow2(level_ - 1) >> shift_) + 1);
    const std::size_t ncells = static_cast<std::size_t>(cols_) * rows_;
    cell_start_.assign(ncells + 1, 0);
    for (const PackedPoint& p : points_) ++cell_start_[cell_of(p) + 1];
    for (std::size_t c = 0; c < ncells; ++c) cell_start_[c + 1] += cell_start_[c];
    cell_points_.resize(points_.size());
    std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (std::uint32_t i = 0; i < points_.size(); ++i)
      cell_points_[cursor[cell_of(points_[i])]++] = i;
  }

  std::size_t cell_of(const PackedPoint& p) const {
    return static_cast<std::size_t>(p.b >> shift_) * cols_ + (p.a >> shift_);
  }

  int level_;
  std::vector<PackedPoint> points_;  // lexicographically sorted, unique
  int shift_ = 0;
  int cols_ = 0, rows_ = 0;
  std::vector<std::uint32_t> cell_points_;
  std::vector<std::uint32_t> cell_start_;
};

/// Exact membership test for the closed triangle T_w at the set's level.
inline bool in_cylinder_triangle(const Word& w, std::int64_t a, std::int64_t b, int level) {
  if (static_cast<int>(w.size()) > level) throw domain_error("cylinder word longer than the level");
  LatticePoint corner{0, 0, level - static_cast<int>(w.size())};
  corner = apply_word(w, corner);  // f_w(z_0), bottom-left vertex of T_w
  const std::int64_t side = pow2(level - static_cast<int>(w.size()));
  return b >= corner.b && (b - corner.b) <= (a - corner.a) && (b - corner.b) <= (corner.a + side - a);
}

/// A_k int S_w, computed exactly as f_w(A_{k-|w|}) on the lattice. Includes
/// shared boundary vertices. Result is lex-sorted.
inline std::vector<LatticePoint> cylinder_subset(const ApproxSet& set, const Word& w) {
  const int k = set.level();
  const int len = static_cast<int>(w.size());
  if (len >= k && len != 0) throw domain_error("cylinder_subset: need |w| <= k - 1");
  std::vector<LatticePoint> out;
  if (len == 0) {
    out.reserve(set.size());
    for (const PackedPoint& p : set.points()) out.push_back({p.a, p.b, k});
    return out;
  }
  const ApproxSet base = ApproxSet::generate(k - len);
  out.reserve(base.size());
  for (const PackedPoint& p : base.points()) out.push_back(apply_word(w, LatticePoint{p.a, p.b, k - len}));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace gasket
