#pragma once

// The density-optimisation sweep shared by the centred and packing
// estimators. Per center: gather squared distances inside the radius window
// via the grid (pure int64 compares after the window endpoints are reduced
// to integer thresholds), radix-sort them, walk the distinct distances in
// increasing order accumulating exact masses, and evaluate the objective
// (2d)^s / mass only at candidate radii. Centers are split into contiguous
// chunks across workers; the reduction uses a strict total order on
// (objective, sq_radius, center), so results do not depend on the worker
// count.

#include "gasket/approx_set.hpp"
#include "gasket/density.hpp"
#include "gasket/measure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <thread>
#include <vector>

namespace gasket {

struct SweepBest {
  bool found = false;
  double objective = 0;
  std::int64_t sq_scaled = 0;  // squared radius at scale 4^k
  LatticePoint center;
  MassCount mass;  // mass of the winning ball (open or closed per request)
};

struct SweepRequest {
  bool maximize = false;
  bool open_balls = false;
  std::int64_t lo_scaled = 0;            // smallest admissible squared radius (inclusive)
  std::int64_t hi_scaled = -1;           // largest, when fixed for all centers
  std::function<std::int64_t(const LatticePoint&)> hi_per_center;  // else per-center
  std::function<bool(std::int64_t a, std::int64_t b)> radius_candidate;  // y-point eligibility
  int workers = 1;
};

namespace detail {

// LSD radix sort on 8-bit digits; skips digit positions that are constant.
inline void radix_sort(std::vector<std::uint64_t>& keys, std::vector<std::uint64_t>& scratch) {
  if (keys.size() < 64) {
    std::sort(keys.begin(), keys.end());
    return;
  }
  std::uint64_t maxk = 0;
  for (std::uint64_t k : keys) maxk |= k;
  scratch.resize(keys.size());
  std::array<std::uint32_t, 256> counts;
  for (int shift = 0; shift < 64; shift += 8) {
    if ((maxk >> shift) == 0) break;
    if (((maxk >> shift) & 0xff) == 0) continue;  // maxk is the OR of all keys
    counts.fill(0);
    for (std::uint64_t k : keys) ++counts[(k >> shift) & 0xff];
    std::uint32_t sum = 0;
    for (std::uint32_t& c : counts) {
      const std::uint32_t t = c;
      c = sum;
      sum += t;
    }
    for (std::uint64_t k : keys) scratch[counts[(k >> shift) & 0xff]++] = k;
    keys.swap(scratch);
  }
}

/// Evaluates (2d)^s for scaled squared radii, with an optional lookup table
/// over a contiguous D range (the sweep windows are narrow enough at the
/// default levels that one table covers every candidate).
class DiameterPow {
 public:
  DiameterPow(std::int64_t S, std::int64_t lo, std::int64_t hi, std::size_t table_limit = std::size_t{1} << 24)
      : inv_scale_(1.0 / static_cast<double>(S)), lo_(lo) {
    if (hi >= lo && static_cast<std::uint64_t>(hi - lo) < table_limit) {
      table_.resize(static_cast<std::size_t>(hi - lo + 1));
      for (std::int64_t D = lo; D <= hi; ++D)
        table_[static_cast<std::size_t>(D - lo)] = compute(D);
    }
  }

  bool has_table() const { return !table_.empty(); }

  double operator()(std::int64_t D) const {
    if (!table_.empty()) {
      const std::int64_t i = D - lo_;
      if (i >= 0 && i < static_cast<std::int64_t>(table_.size())) return table_[static_cast<std::size_t>(i)];
    }
    return compute(D);
  }

 private:
  double compute(std::int64_t D) const {
    return std::pow(static_cast<double>(4 * D) * inv_scale_, 0.5 * kDimension);
  }

  double inv_scale_;
  std::int64_t lo_;
  std::vector<double> table_;
};

struct CenterScratch {
  std::vector<std::uint64_t> keys;
  std::vector<std::uint64_t> radix_buffer;
};

/// Strict total order: better objective first, then smaller squared radius,
/// then lexicographically smaller center. Makes the argmin unique and the
/// reduction order irrelevant.
inline bool sweep_better(bool maximize, const SweepBest& a, const SweepBest& b) {
  if (a.objective != b.objective) return maximize ? a.objective > b.objective : a.objective < b.objective;
  if (a.sq_scaled != b.sq_scaled) return a.sq_scaled < b.sq_scaled;
  return a.center < b.center;
}

inline void sweep_center(const ApproxSet& set, const LatticePoint& cx, const SweepRequest& req,
                         const DiameterPow& eval, CenterScratch& scratch, SweepBest& best) {
  const std::int64_t L = req.lo_scaled;
  const std::int64_t H = req.hi_per_center ? req.hi_per_center(cx) : req.hi_scaled;
  if (H < L) return;
  const ScaledPoint c = ScaledPoint::from_lattice(cx);
  const std::int64_t S = c.scale();

  // Corner bookkeeping: the three outer vertices carry half weight.
  std::array<std::int64_t, 3> corner_ds{};
  {
    const auto zs = corner_points(set.level());
    for (int i = 0; i < 3; ++i) corner_ds[i] = c.sq_dist_scaled(zs[i].a, zs[i].b);
    std::sort(corner_ds.begin(), corner_ds.end());
  }

  std::int64_t below_total = 0;
  auto& keys = scratch.keys;
  keys.clear();

  // Grid pass: cells fully below the window contribute a bulk count, cells
  // fully beyond it are skipped, boundary cells get per-point tests.
  const int shift = set.grid_shift();
  const std::int64_t cap_a = pow2(set.level());
  // Strict integer upper bounds for sqrt(H) and sqrt(H/3); float sqrt alone
  // can undershoot by several units at the top of the int64 range.
  auto isqrt_above = [](std::int64_t v) {
    std::int64_t r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(v)));
    r = std::max<std::int64_t>(r - 2, 0);
    while (r * r <= v) ++r;
    return r;
  };
  const std::int64_t ra = isqrt_above(H);
  const std::int64_t rb = isqrt_above(H / 3);
  const int ca0 = static_cast<int>(std::max<std::int64_t>((cx.a - ra) >> shift, 0));
  const int ca1 = static_cast<int>(std::min<std::int64_t>((cx.a + ra) >> shift, set.grid_cols() - 1));
  const int cb0 = static_cast<int>(std::max<std::int64_t>((cx.b - rb) >> shift, 0));
  const int cb1 = static_cast<int>(std::min<std::int64_t>((cx.b + rb) >> shift, set.grid_rows() - 1));
  const bool filtered = static_cast<bool>(req.radius_candidate);
  for (int cb = cb0; cb <= cb1; ++cb) {
    const std::int64_t b0 = static_cast<std::int64_t>(cb) << shift;
    const std::int64_t b1 = std::min(((static_cast<std::int64_t>(cb) + 1) << shift) - 1, cap_a / 2);
    for (int ca = ca0; ca <= ca1; ++ca) {
      const std::uint32_t n = set.cell_count(ca, cb);
      if (n == 0) continue;
      const std::int64_t a0 = static_cast<std::int64_t>(ca) << shift;
      const std::int64_t a1 = std::min(((static_cast<std::int64_t>(ca) + 1) << shift) - 1, cap_a);
      const auto d = cell_distance(c, a0, a1, b0, b1);
      if (d.min_sq > H) continue;
      if (d.max_sq < L) {
        below_total += n;
        continue;
      }
      for (std::uint32_t idx : set.cell_indices(ca, cb)) {
        const PackedPoint& p = set.points()[idx];
        const std::int64_t D = c.sq_dist_scaled(p.a, p.b);
        if (D < L)
          ++below_total;
        else if (D <= H) {
          std::uint64_t key = static_cast<std::uint64_t>(D) << 1;
          if (filtered && !req.radius_candidate(p.a, p.b)) key |= 1;  // mass only, not a radius
          keys.push_back(key);
        }
      }
    }
  }
  std::int64_t below_corner = 0;
  for (std::int64_t cd : corner_ds)
    if (cd < L) ++below_corner;

  radix_sort(keys, scratch.radix_buffer);

  // Walk distinct distances in increasing order. Without a lookup table the
  // objective is guarded by a conservative threshold so pow runs only for
  // contenders.
  const double inv_pow3k = 1.0 / static_cast<double>(pow3(set.level()));
  std::int64_t run_total = below_total;
  std::int64_t run_corner = below_corner;
  const bool use_prune = !eval.has_table();
  double prune_gate = -1;  // maximize: smallest D worth a look; minimize: largest useful mass numerator
  const double inv_scale = 1.0 / static_cast<double>(S);
  std::size_t i = 0;
  while (i < keys.size()) {
    const std::int64_t D = static_cast<std::int64_t>(keys[i] >> 1);
    bool any_candidate = false;
    std::size_t j = i;
    while (j < keys.size() && static_cast<std::int64_t>(keys[j] >> 1) == D) {
      if ((keys[j] & 1) == 0) any_candidate = true;
      ++j;
    }
    const std::int64_t group = static_cast<std::int64_t>(j - i);
    std::int64_t group_corner = 0;
    for (std::int64_t cd : corner_ds)
      if (cd == D) ++group_corner;

    const std::int64_t open_total = run_total, open_corner = run_corner;
    run_total += group;
    run_corner += group_corner;

    if (any_candidate) {
      const std::int64_t total = req.open_balls ? open_total : run_total;
      const std::int64_t corner = req.open_balls ? open_corner : run_corner;
      const std::int64_t numer = 2 * total - corner;
      if (numer > 0) {  // zero-mass open balls are skipped, not errors
        bool evaluate = true;
        if (use_prune && best.found) {
          if (req.maximize) {
            // beats only if (4D/S)^(s/2) > obj * mass
            if (static_cast<double>(D) <= prune_gate)
              evaluate = false;
            else {
              const double m = static_cast<double>(numer) * inv_pow3k;
              prune_gate = 0.25 * static_cast<double>(S) *
                           std::pow(best.objective * m * (1.0 - 1e-12), 2.0 / kDimension) - 1.0;
              evaluate = static_cast<double>(D) > prune_gate;
            }
          } else {
            // beats only if mass numerator exceeds 3^k * (4D/S)^(s/2) / obj
            if (static_cast<double>(numer) <= prune_gate)
              evaluate = false;
            else {
              prune_gate = std::pow(static_cast<double>(4 * D) * inv_scale, 0.5 * kDimension) /
                               (best.objective * inv_pow3k) * (1.0 - 1e-12) - 1.0;
              evaluate = static_cast<double>(numer) > prune_gate;
            }
          }
        }
        if (evaluate) {
          const double mass = static_cast<double>(numer) * inv_pow3k;
          SweepBest cand;
          cand.found = true;
          cand.objective = eval(D) / mass;
          cand.sq_scaled = D;
          cand.center = cx;
          cand.mass = {total, corner};
          if (!best.found || sweep_better(req.maximize, cand, best)) {
            best = cand;
            prune_gate = -1;  // stale after the incumbent changes
          }
        }
      }
    }
    i = j;
  }
}

}  // namespace detail

/// Sweeps all centers and returns the unique optimum under the total order
/// (objective, squared radius, center).
inline SweepBest density_sweep(const ApproxSet& set, const std::vector<LatticePoint>& centers,
                               const SweepRequest& req) {
  std::int64_t global_hi = req.hi_scaled;
  if (req.hi_per_center) {
    global_hi = 0;
    for (const LatticePoint& c : centers) global_hi = std::max(global_hi, req.hi_per_center(c));
  }
  const detail::DiameterPow eval(pow4(set.level()), req.lo_scaled, global_hi);

  const int workers = std::max(req.workers, 1);
  if (workers == 1 || centers.size() < 2) {
    SweepBest best;
    detail::CenterScratch scratch;
    for (const LatticePoint& c : centers) detail::sweep_center(set, c, req, eval, scratch, best);
    return best;
  }

  std::vector<SweepBest> partial(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  const std::size_t chunk = (centers.size() + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = std::min(static_cast<std::size_t>(w) * chunk, centers.size());
    const std::size_t hi = std::min(lo + chunk, centers.size());
    pool.emplace_back([&, lo, hi, w] {
      detail::CenterScratch scratch;
      for (std::size_t i = lo; i < hi; ++i)
        detail::sweep_center(set, centers[i], req, eval, scratch, partial[static_cast<std::size_t>(w)]);
    });
  }
  for (auto& t : pool) t.join();
  SweepBest best;
  for (const SweepBest& p : partial)
    if (p.found && (!best.found || detail::sweep_better(req.maximize, p, best))) best = p;
  return best;
}

}  // namespace gasket
