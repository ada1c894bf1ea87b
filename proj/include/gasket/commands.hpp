#pragma once

// Command handlers behind the CLI: parsing of center and radius specs,
// the long-run guardrail, output formatting and exit codes. Kept in the
// library so tests can drive the exact surface the binary exposes.
//
// Exit codes: 0 success, 1 reference mismatch, 2 usage/domain error,
// 3 capacity exceeded.

#include "gasket/cache.hpp"
#include "gasket/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace gasket {

enum ExitCode : int {
  kExitOk = 0,
  kExitMismatch = 1,
  kExitUsage = 2,
  kExitCapacity = 3,
};

struct RunConfig {
  int k = 0;
  int k_min = 0;
  int k_max = 0;
  std::string variant = "original";
  bool full_sweep = false;
  std::string format = "human";  // human | json | csv
  std::string out;               // empty = stdout
  std::string cache_dir;
  int workers = 1;
  bool confirm_long = false;
  std::string center_spec;
  std::string radius_spec;       // restricted-ball: exact radius or "spherical-optimal"
  std::string bounds = "auto";   // auto | golden | computed
  std::string emit_profile;
  std::string window = "all";    // profile preset: centred | spherical | packing | all
  std::string window_lo;         // explicit overrides
  std::string window_hi;
  int grid_log = ApproxSet::kDefaultGridLog;
};

// Sweep commands above this level must be confirmed explicitly.
inline constexpr int kLongRunLevel = 13;

namespace cli {

inline Rational parse_rational(const std::string& text) {
  const auto fail = [&] { throw domain_error("cannot parse rational '" + text + "'"); };
  if (text.empty()) fail();
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const Rational num = parse_rational(text.substr(0, slash));
    const Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }
  const auto dot = text.find('.');
  std::string digits = text;
  int frac_digits = 0;
  if (dot != std::string::npos) {
    frac_digits = static_cast<int>(text.size() - dot - 1);
    digits = text.substr(0, dot) + text.substr(dot + 1);
  }
  if (digits.empty()) fail();
  std::size_t i = 0;
  bool negative = false;
  if (digits[0] == '-' || digits[0] == '+') {
    negative = digits[0] == '-';
    i = 1;
  }
  if (i == digits.size()) fail();
  BigInt acc = 0;
  for (; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9') fail();
    acc = acc * 10 + (digits[i] - '0');
  }
  Rational value = negative ? Rational(-acc) : Rational(acc);
  for (int f = 0; f < frac_digits; ++f) value /= 10;
  return value;
}

/// Exact radius grammar: "<rat>", "sqrt3/<int>", "<rat>*sqrt3",
/// "sqrt(<rat>)", optionally followed by +<rat> or -<rat>.
inline ExactRadius parse_exact_radius(const std::string& spec) {
  std::string text = spec;
  text.erase(std::remove(text.begin(), text.end(), ' '), text.end());
  if (text.empty()) throw domain_error("empty radius spec");
  // Split a trailing +<rat> / -<rat> offset; the radical term comes first.
  std::string head = text, tail;
  std::size_t split = std::string::npos;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (text[i] != '+' && text[i] != '-') continue;
    const char prev = text[i - 1];
    if (prev == '/' || prev == '*' || prev == '+' || prev == '-' || prev == '(') continue;
    if (text.find("sqrt", i) != std::string::npos) continue;  // offsets are rational
    split = i;
  }
  if (split != std::string::npos) {
    head = text.substr(0, split);
    tail = text.substr(split);
  }
  auto parse_term = [](const std::string& term) -> ExactRadius {
    if (term.rfind("sqrt3/", 0) == 0)
      return ExactRadius::sqrt3_times(Rational(1) / parse_rational(term.substr(6)));
    if (term.rfind("sqrt3*", 0) == 0) return ExactRadius::sqrt3_times(parse_rational(term.substr(6)));
    if (term == "sqrt3") return ExactRadius::sqrt3_times(1);
    if (term.rfind("sqrt(", 0) == 0 && term.back() == ')')
      return ExactRadius::sqrt_of(parse_rational(term.substr(5, term.size() - 6)));
    const auto star = term.find("*sqrt3");
    if (star != std::string::npos && star + 6 == term.size())
      return ExactRadius::sqrt3_times(parse_rational(term.substr(0, star)));
    return ExactRadius::from_rational(parse_rational(term));
  };
  const ExactRadius base = parse_term(head);
  if (tail.empty()) return base;
  return base.shifted(parse_rational(tail));
}

/// Center grammar: "barycentre", "z0".."z2", "f<word>(z<j>)" such as
/// "f010(z2)", or "<rat>,<rat>" raw coordinates in the (1, sqrt(3)) basis.
inline ScaledPoint parse_center(const std::string& spec, int k) {
  if (spec == "barycentre" || spec == "barycenter" || spec == "xb") return ScaledPoint::barycentre(k);
  if (spec.size() == 2 && spec[0] == 'z' && spec[1] >= '0' && spec[1] <= '2')
    return ScaledPoint::from_lattice(corner_points(k)[spec[1] - '0']);
  if (spec.size() > 1 && spec[0] == 'f') {
    const auto open = spec.find("(z");
    if (open != std::string::npos && spec.back() == ')' && open + 3 == spec.size() - 1) {
      const Word w = parse_word(spec.substr(1, open - 1));
      const char j = spec[open + 2];
      if (j < '0' || j > '2') throw domain_error("bad vertex in center spec '" + spec + "'");
      const LatticePoint p = apply_word(w, corner_points(1)[j - '0']);
      if (p.level > k)
        throw domain_error("center word too deep for level " + std::to_string(k));
      return ScaledPoint::from_lattice(p.at_level(k));
    }
  }
  const auto comma = spec.find(',');
  if (comma != std::string::npos)
    return ScaledPoint::from_rationals(parse_rational(spec.substr(0, comma)),
                                       parse_rational(spec.substr(comma + 1)), k);
  throw domain_error("cannot parse center spec '" + spec + "'");
}

inline void write_output(const RunConfig& cfg, const std::string& payload) {
  if (cfg.out.empty()) {
    std::cout << payload;
    if (!payload.empty() && payload.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream os(cfg.out, std::ios::trunc);
  if (!os) throw domain_error("cannot write output file " + cfg.out);
  os << payload;
  if (!payload.empty() && payload.back() != '\n') os << '\n';
}

inline void check_capacity(int k) {
  if (k > kMaxLevel)
    throw capacity_error("k = " + std::to_string(k) + " exceeds the exact-arithmetic capacity (" +
                         std::to_string(kMaxLevel) + ")");
}

inline void check_guardrail(const RunConfig& cfg, int k) {
  if (k >= kLongRunLevel && !cfg.confirm_long) {
    const std::int64_t centers = (pow3(std::max(k - 2, 1)) + 3) / 2;
    throw domain_error("k = " + std::to_string(k) + " sweeps ~" + std::to_string(centers) +
                       " centers against ~" + std::to_string((pow3(k) + 3) / 2) +
                       " points and can run for a long time; pass --confirm-long to proceed");
  }
}

inline RadiusWindow profile_window(const RunConfig& cfg, int k, const ScaledPoint& center) {
  if (!cfg.window_lo.empty() || !cfg.window_hi.empty()) {
    const ExactRadius lo =
        cfg.window_lo.empty() ? ExactRadius::from_rational(0) : parse_exact_radius(cfg.window_lo);
    const ExactRadius hi = cfg.window_hi.empty()
                               ? ExactRadius::from_rational(std::numeric_limits<std::int64_t>::max())
                               : parse_exact_radius(cfg.window_hi);
    return RadiusWindow(lo, hi);
  }
  if (cfg.window == "centred") return centred_window(k);
  if (cfg.window == "spherical") return spherical_window();
  if (cfg.window == "packing") {
    if (!center.is_lattice()) throw domain_error("packing window needs a lattice center");
    const std::int64_t dx = rhombus_boundary_sq_dist(center.as_lattice());
    return RadiusWindow(packing_lower_radius(k, PackingVariant::Original),
                        ExactRadius::sqrt_of(Rational(dx) / pow4(k)));
  }
  if (cfg.window == "all") return RadiusWindow::everything();
  throw domain_error("unknown window preset '" + cfg.window + "'");
}

}  // namespace cli

// --- command handlers ----------------------------------------------------

inline int run_centred(const RunConfig& cfg) {
  cli::check_capacity(cfg.k);
  cli::check_guardrail(cfg, cfg.k);
  const ApproxSet set = obtain_approx_set(cfg.k, cfg.cache_dir, cfg.grid_log);
  const CentredResult r = compute_centred(set, {cfg.full_sweep, cfg.workers});
  if (!cfg.emit_profile.empty()) {
    const auto profile =
        distance_profile(set, ScaledPoint::from_lattice(r.center), centred_window(cfg.k));
    std::ofstream os(cfg.emit_profile, std::ios::trunc);
    if (!os) throw domain_error("cannot write profile file " + cfg.emit_profile);
    write_profile_csv(os, profile);
  }
  if (cfg.format == "json") {
    cli::write_output(cfg, centred_to_json(r).dump(2));
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf, "k=%d  d_k=%s  C_inf=%s  C_k=%s  C_sup=%s  center=(%lld,%lld)/2^%d\n",
                  r.k, round6(r.radius, Rounding::Nearest).c_str(), round6(r.lower, Rounding::Down).c_str(),
                  round6(r.estimate, Rounding::Nearest).c_str(), round6(r.upper, Rounding::Up).c_str(),
                  static_cast<long long>(r.center.a), static_cast<long long>(r.center.b), r.k);
    cli::write_output(cfg, buf);
  }
  return kExitOk;
}

inline int run_packing(const RunConfig& cfg) {
  cli::check_capacity(cfg.k);
  cli::check_guardrail(cfg, cfg.k);
  PackingOptions opts;
  if (cfg.variant == "original")
    opts.variant = PackingVariant::Original;
  else if (cfg.variant == "improved")
    opts.variant = PackingVariant::Improved;
  else
    throw domain_error("unknown packing variant '" + cfg.variant + "'");
  opts.full_sweep = cfg.full_sweep;
  opts.workers = cfg.workers;
  const ApproxSet set = obtain_approx_set(cfg.k, cfg.cache_dir, cfg.grid_log);
  const PackingResult r = compute_packing(set, opts);
  if (cfg.format == "json") {
    cli::write_output(cfg, packing_to_json(r).dump(2));
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf, "k=%d  variant=%s  d_k=%s  P_inf=%s  P_k=%s  P_sup=%s\n", r.k,
                  cfg.variant.c_str(), round6(r.radius, Rounding::Nearest).c_str(),
                  round6(r.lower, Rounding::Down).c_str(), round6(r.estimate, Rounding::Nearest).c_str(),
                  round6(r.upper, Rounding::Up).c_str());
    cli::write_output(cfg, buf);
  }
  return kExitOk;
}

inline int run_spherical(const RunConfig& cfg) {
  cli::check_capacity(cfg.k);
  const ApproxSet set = obtain_approx_set(cfg.k, cfg.cache_dir, cfg.grid_log);
  const SphericalResult r = compute_spherical(set, {cfg.full_sweep});
  if (!cfg.emit_profile.empty()) {
    std::ofstream os(cfg.emit_profile, std::ios::trunc);
    if (!os) throw domain_error("cannot write profile file " + cfg.emit_profile);
    write_profile_csv(os, barycentre_profile(set));
  }
  if (cfg.format == "json") {
    cli::write_output(cfg, spherical_to_json(r).dump(2));
  } else {
    char buf[320];
    std::snprintf(buf, sizeof buf,
                  "k=%d  D_k=%.6f  C_sph_lower=%s  C_sph=%s  C_sph_upper=%s\n"
                  "spherical measure: upper bound %s, conjectured estimate %s (not a proven value)\n",
                  r.k, r.radius, round6(r.lower, Rounding::Down).c_str(),
                  round6(r.estimate, Rounding::Nearest).c_str(), round6(r.upper, Rounding::Up).c_str(),
                  format_fixed(r.measure_upper, 4, Rounding::Up).c_str(),
                  format_fixed(r.measure_estimate, 4, Rounding::Nearest).c_str());
    cli::write_output(cfg, buf);
  }
  return kExitOk;
}

inline int run_table(const RunConfig& cfg) {
  if (cfg.k_min < 5 || cfg.k_min > cfg.k_max) throw domain_error("table needs 5 <= k-min <= k-max");
  cli::check_capacity(cfg.k_max);
  cli::check_guardrail(cfg, cfg.k_max);
  std::vector<CentredResult> results;
  for (int k = cfg.k_min; k <= cfg.k_max; ++k) {
    const ApproxSet set = obtain_approx_set(k, cfg.cache_dir, cfg.grid_log);
    results.push_back(compute_centred(set, {cfg.full_sweep, cfg.workers}));
  }
  const TableReport report = diff_against_golden(results);
  const BracketWidthTable widths = centred_bracket_widths(results);
  if (cfg.format == "json") {
    Json j;
    j["rows"] = Json::array();
    for (const TableRow& row : report.rows) {
      Json rj = centred_to_json(row.result);
      rj["reference"] = row.has_reference ? (row.mismatches.empty() ? "ok" : "mismatch") : "none";
      for (const TableCellDiff& d : row.mismatches)
        rj["mismatches"].push_back({{"column", d.column}, {"computed", d.computed}, {"reference", d.reference}});
      j["rows"].push_back(std::move(rj));
    }
    j["bracket_widths"] = width_table_to_json(widths);
    j["compared"] = report.compared;
    j["mismatched"] = report.mismatched;
    cli::write_output(cfg, j.dump(2));
  } else if (cfg.format == "csv") {
    std::string csv = "k,d_k,c_inf,c_k,c_sup,reference\n";
    for (const TableRow& row : report.rows) {
      const CentredResult& r = row.result;
      csv += std::to_string(r.k) + "," + round6(r.radius, Rounding::Nearest) + "," +
             round6(r.lower, Rounding::Down) + "," + round6(r.estimate, Rounding::Nearest) + "," +
             round6(r.upper, Rounding::Up) + "," +
             (!row.has_reference ? "none" : row.mismatches.empty() ? "ok" : "mismatch") + "\n";
    }
    cli::write_output(cfg, csv);
  } else {
    std::string text = render_table(report);
    text += "\nbracket widths (C_sup - C_inf):\n";
    for (const BracketWidthRow& row : widths.rows) {
      char line[64];
      std::snprintf(line, sizeof line, "  k=%2d  width=%.6f\n", row.k, row.width);
      text += line;
    }
    if (report.compared > 0)
      text += report.clean() ? "\nall " + std::to_string(report.compared) + " reference rows match\n"
                             : "\n" + std::to_string(report.mismatched) + " row(s) mismatch the reference\n";
    cli::write_output(cfg, text);
  }
  return report.clean() ? kExitOk : kExitMismatch;
}

inline int run_profile(const RunConfig& cfg) {
  cli::check_capacity(cfg.k);
  const ApproxSet set = obtain_approx_set(cfg.k, cfg.cache_dir, cfg.grid_log);
  const ScaledPoint center = cli::parse_center(cfg.center_spec, cfg.k);
  const RadiusWindow window = cli::profile_window(cfg, cfg.k, center);
  const DistanceProfile profile = distance_profile(set, center, window);
  std::ostringstream os;
  write_profile_csv(os, profile);
  cli::write_output(cfg, os.str());
  return kExitOk;
}

inline int run_restricted_ball(const RunConfig& cfg) {
  cli::check_capacity(cfg.k);
  const ApproxSet set = obtain_approx_set(cfg.k, cfg.cache_dir, cfg.grid_log);
  const ScaledPoint center = cli::parse_center(cfg.center_spec, cfg.k);

  ExactRadius radius = ExactRadius::from_rational(0);
  if (cfg.radius_spec == "spherical-optimal") {
    const SphericalResult sph = compute_spherical(set);
    radius = ExactRadius::sqrt_of(Rational(sph.sq_scaled) / sph.scale);
  } else {
    radius = cli::parse_exact_radius(cfg.radius_spec);
  }

  CentredBounds bounds{};
  std::string provenance;
  const auto golden = golden_centred_bounds(cfg.k);
  if (cfg.bounds == "golden" || (cfg.bounds == "auto" && golden)) {
    if (!golden) throw domain_error("no reference centred bounds for k = " + std::to_string(cfg.k));
    bounds = *golden;
    provenance = "reference-table";
  } else if (cfg.bounds == "computed" || cfg.bounds == "auto") {
    cli::check_guardrail(cfg, cfg.k);
    const CentredResult c = compute_centred(set, {false, cfg.workers});
    bounds = {c.lower, c.estimate, c.upper};
    provenance = "computed";
  } else {
    throw domain_error("unknown bounds source '" + cfg.bounds + "'");
  }

  const RestrictedBallBracket r = restricted_ball_bracket(set, center, radius, bounds);
  if (cfg.format == "json") {
    cli::write_output(cfg, bracket_to_json(r, provenance).dump(2));
  } else {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "restricted measure of B: [%s, %s], estimate %s  (bounds: %s)\n"
                  "masses: inner %.6f  mid %.6f  outer %.6f\n",
                  round6(r.lower, Rounding::Down).c_str(), round6(r.upper, Rounding::Up).c_str(),
                  round6(r.estimate, Rounding::Nearest).c_str(), provenance.c_str(),
                  to_double(r.mass_inner), to_double(r.mass_mid), to_double(r.mass_outer));
    cli::write_output(cfg, buf);
  }
  return kExitOk;
}

}  // namespace gasket
