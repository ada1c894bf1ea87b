#pragma once

// Exact arithmetic for radii of the form sqrt(q) + r with rational q, r.
// Every radius this library ever compares against a lattice distance fits
// that form, so one sign routine decides all ball-membership and window
// questions without floating point.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace gasket {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct capacity_error : std::runtime_error {
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline int sign_of(const Rational& x) {
  return x == 0 ? 0 : (x > 0 ? 1 : -1);
}

/// Sign of t + c*sqrt(B) for rationals t, c and B >= 0.
inline int sign_linear_sqrt(const Rational& t, const Rational& c, const Rational& B) {
  if (B < 0) throw domain_error("sign_linear_sqrt: negative radicand");
  if (c == 0 || B == 0) return sign_of(t);
  if (t == 0) return sign_of(c);
  if (t > 0 && c > 0) return 1;
  if (t < 0 && c < 0) return -1;
  // Opposite signs: compare |t| with |c|*sqrt(B) by squaring once.
  const Rational tt = t * t;
  const Rational cc = c * c * B;
  const int cmp = tt == cc ? 0 : (tt > cc ? 1 : -1);
  return t > 0 ? cmp : -cmp;
}

/// Sign of sqrt(A) - sqrt(B) - w for rationals A >= 0, B >= 0 and w.
inline int sign_sqrt_diff(const Rational& A, const Rational& B, const Rational& w) {
  if (A < 0 || B < 0) throw domain_error("sign_sqrt_diff: negative radicand");
  if (w < 0) {
    const Rational ww = w * w;
    if (B < ww) return 1;                    // sqrt(B) + w < 0 <= sqrt(A)
    if (B == ww) return A > 0 ? 1 : 0;       // sqrt(B) + w == 0
  }
  // Both sides nonnegative: compare A with (sqrt(B) + w)^2.
  return sign_linear_sqrt(A - B - w * w, -2 * w, B);
}

/// An exact nonnegative-or-signed real of the form sqrt(sq_part) + offset.
class ExactRadius {
 public:
  ExactRadius() = default;
  ExactRadius(Rational sq, Rational off) : sq_(std::move(sq)), off_(std::move(off)) {
    if (sq_ < 0) throw domain_error("ExactRadius: negative radicand");
  }

  static ExactRadius from_rational(Rational r) { return ExactRadius(0, std::move(r)); }
  static ExactRadius sqrt_of(Rational sq) { return ExactRadius(std::move(sq), 0); }
  /// c * sqrt(3) for c >= 0.
  static ExactRadius sqrt3_times(const Rational& c) {
    if (c < 0) throw domain_error("ExactRadius::sqrt3_times: negative coefficient");
    return ExactRadius(3 * c * c, 0);
  }

  ExactRadius shifted(const Rational& delta) const { return ExactRadius(sq_, off_ + delta); }

  const Rational& sq_part() const { return sq_; }
  const Rational& offset() const { return off_; }

  int sign() const { return sign_sqrt_diff(sq_, 0, -off_); }

  /// Compares *this with another exact radius: -1, 0, +1.
  int compare(const ExactRadius& other) const {
    // sqrt(A) + u ? sqrt(B) + v  <=>  sign(sqrt(A) - sqrt(B) - (v - u))
    return sign_sqrt_diff(sq_, other.sq_, other.off_ - off_);
  }

  double value() const { return std::sqrt(to_double(sq_)) + to_double(off_); }

  /// The square of the value as a double. Exact-rational path whenever one
  /// of the two parts vanishes; mixed forms take one sqrt rounding.
  double value_sq() const {
    if (off_ == 0) return to_double(sq_);
    if (sq_ == 0) return to_double(off_ * off_);
    return to_double(sq_ + off_ * off_) + 2.0 * to_double(off_) * std::sqrt(to_double(sq_));
  }

 private:
  Rational sq_ = 0;   // radicand
  Rational off_ = 0;  // rational offset
};

/// Compares sqrt(D / S) with r, where D is an integer squared distance on
/// the scale S (real distance^2 = D / S). Returns -1, 0, +1.
inline int compare_scaled_distance(std::int64_t D, std::int64_t S, const ExactRadius& r) {
  if (D < 0 || S <= 0) throw domain_error("compare_scaled_distance: bad scale");
  return sign_sqrt_diff(Rational(D) / S, r.sq_part(), r.offset());
}

/// A closed/open interval of radii with exact endpoints.
class RadiusWindow {
 public:
  RadiusWindow(ExactRadius lo, ExactRadius hi, bool lo_inclusive = true, bool hi_inclusive = true)
      : lo_(std::move(lo)), hi_(std::move(hi)), lo_incl_(lo_inclusive), hi_incl_(hi_inclusive) {
    if (lo_.compare(hi_) > 0) throw domain_error("RadiusWindow: lo > hi");
  }

  static RadiusWindow everything() {
    return RadiusWindow(ExactRadius::from_rational(0), ExactRadius::from_rational(std::numeric_limits<std::int64_t>::max()));
  }

  const ExactRadius& lo() const { return lo_; }
  const ExactRadius& hi() const { return hi_; }
  bool lo_inclusive() const { return lo_incl_; }
  bool hi_inclusive() const { return hi_incl_; }

  bool contains_scaled(std::int64_t D, std::int64_t S) const {
    const int cl = compare_scaled_distance(D, S, lo_);
    if (cl < 0 || (cl == 0 && !lo_incl_)) return false;
    const int ch = compare_scaled_distance(D, S, hi_);
    return ch < 0 || (ch == 0 && hi_incl_);
  }

  struct ScaledBounds {
    std::int64_t lo = 1;
    std::int64_t hi = 0;
    bool empty() const { return lo > hi; }
  };

  /// Smallest/largest integer D in [0, max_sq] with sqrt(D/S) inside the
  /// window. All per-point membership tests then reduce to two integer
  /// comparisons.
  ScaledBounds scaled_bounds(std::int64_t S, std::int64_t max_sq) const {
    ScaledBounds out;
    auto pass_lo = [&](std::int64_t D) {
      const int c = compare_scaled_distance(D, S, lo_);
      return c > 0 || (c == 0 && lo_incl_);
    };
    auto pass_hi = [&](std::int64_t D) {
      const int c = compare_scaled_distance(D, S, hi_);
      return c < 0 || (c == 0 && hi_incl_);
    };
    if (!pass_lo(max_sq) || !pass_hi(0)) return out;  // empty
    // First D passing the lower bound.
    std::int64_t lo_d = 0;
    if (!pass_lo(0)) {
      std::int64_t bad = 0, good = max_sq;  // pass_lo(bad)=false, pass_lo(good)=true
      while (good - bad > 1) {
        const std::int64_t mid = bad + (good - bad) / 2;
        (pass_lo(mid) ? good : bad) = mid;
      }
      lo_d = good;
    }
    // Last D passing the upper bound.
    std::int64_t hi_d = max_sq;
    if (!pass_hi(max_sq)) {
      std::int64_t good = 0, bad = max_sq;  // pass_hi(good)=true, pass_hi(bad)=false
      while (bad - good > 1) {
        const std::int64_t mid = good + (bad - good) / 2;
        (pass_hi(mid) ? good : bad) = mid;
      }
      hi_d = good;
    }
    out.lo = lo_d;
    out.hi = hi_d;
    return out;
  }

 private:
  ExactRadius lo_, hi_;
  bool lo_incl_ = true, hi_incl_ = true;
};

}  // namespace gasket
