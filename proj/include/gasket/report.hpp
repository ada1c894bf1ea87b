#pragma once

// Presentation layer: the published rounding rules (lower bounds round
// down, upper bounds round up, estimates and radii to nearest, six decimal
// places), table rendering with a diff against the reference rows, and
// JSON builders. Rounding happens only here; every struct carries full
// doubles.

#include "gasket/centred.hpp"
#include "gasket/golden.hpp"
#include "gasket/packing.hpp"
#include "gasket/spherical.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace gasket {

using Json = nlohmann::ordered_json;

enum class Rounding { Down, Nearest, Up };

/// Fixed-point formatting with directional rounding. Values within 1e-3 of
/// the final digit grid snap to it first: the computation error of the
/// doubles is orders of magnitude below that, and it keeps exact values
/// like 2.7 from leaking a spurious last digit under Up/Down.
inline std::string format_fixed(double v, int decimals, Rounding mode) {
  const double scale = std::pow(10.0, decimals);
  const double y = v * scale;
  const double nearest = std::nearbyint(y);
  double n;
  if (std::fabs(y - nearest) < 1e-3)
    n = nearest;
  else if (mode == Rounding::Down)
    n = std::floor(y);
  else if (mode == Rounding::Up)
    n = std::ceil(y);
  else
    n = nearest;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, n / scale);
  return buf;
}

inline std::string round6(double v, Rounding mode) { return format_fixed(v, 6, mode); }

struct TableCellDiff {
  std::string column;
  std::string computed;
  std::string reference;
};

struct TableRow {
  CentredResult result;
  bool has_reference = false;
  std::vector<TableCellDiff> mismatches;
};

struct TableReport {
  std::vector<TableRow> rows;
  int compared = 0;
  int mismatched = 0;

  bool clean() const { return mismatched == 0; }
};

/// Applies the publication rounding and diffs against the reference rows.
inline TableReport diff_against_golden(const std::vector<CentredResult>& results) {
  TableReport report;
  for (const CentredResult& r : results) {
    TableRow row;
    row.result = r;
    if (const auto ref = golden_centred_row(r.k)) {
      row.has_reference = true;
      ++report.compared;
      const std::pair<const char*, std::pair<std::string, std::string>> cells[] = {
          {"d_k", {round6(r.radius, Rounding::Nearest), round6(ref->d_k, Rounding::Nearest)}},
          {"C_inf", {round6(r.lower, Rounding::Down), round6(ref->c_inf, Rounding::Nearest)}},
          {"C_k", {round6(r.estimate, Rounding::Nearest), round6(ref->c_k, Rounding::Nearest)}},
          {"C_sup", {round6(r.upper, Rounding::Up), round6(ref->c_sup, Rounding::Nearest)}},
      };
      for (const auto& [name, pair] : cells)
        if (pair.first != pair.second) row.mismatches.push_back({name, pair.first, pair.second});
      if (!row.mismatches.empty()) ++report.mismatched;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

inline std::string render_table(const TableReport& report) {
  std::string out = "  k |      d_k |    C_inf |      C_k |    C_sup | reference\n";
  out += "----+----------+----------+----------+----------+----------\n";
  for (const TableRow& row : report.rows) {
    const CentredResult& r = row.result;
    char line[160];
    std::snprintf(line, sizeof line, " %2d | %s | %s | %s | %s | %s\n", r.k,
                  round6(r.radius, Rounding::Nearest).c_str(), round6(r.lower, Rounding::Down).c_str(),
                  round6(r.estimate, Rounding::Nearest).c_str(), round6(r.upper, Rounding::Up).c_str(),
                  !row.has_reference ? "no reference"
                  : row.mismatches.empty() ? "ok"
                                           : "MISMATCH");
    out += line;
    for (const TableCellDiff& d : row.mismatches)
      out += "      " + d.column + ": computed " + d.computed + " vs reference " + d.reference + "\n";
  }
  return out;
}

// --- JSON builders -------------------------------------------------------

inline Json lattice_point_json(const LatticePoint& p) {
  return Json{{"a", p.a}, {"b", p.b}, {"level", p.level}, {"x", p.x()}, {"y", p.y()}};
}

inline Json centred_to_json(const CentredResult& r) {
  Json j;
  j["k"] = r.k;
  j["c_k"] = r.estimate;
  j["c_inf"] = r.lower;
  j["c_sup"] = r.upper;
  j["d_k"] = r.radius;
  j["k_factor"] = r.convergence;
  j["center"] = lattice_point_json(r.center);
  j["sq_radius_scaled"] = r.sq_scaled;
  j["ball_mass"] = mass_to_double(r.mass, r.k);
  j["rounded"] = {{"d_k", round6(r.radius, Rounding::Nearest)},
                  {"c_inf", round6(r.lower, Rounding::Down)},
                  {"c_k", round6(r.estimate, Rounding::Nearest)},
                  {"c_sup", round6(r.upper, Rounding::Up)}};
  return j;
}

inline Json packing_to_json(const PackingResult& r) {
  Json j;
  j["k"] = r.k;
  j["variant"] = r.variant == PackingVariant::Original ? "original" : "improved";
  j["p_k"] = r.estimate;
  j["p_inf"] = r.lower;
  j["p_sup"] = r.upper;
  j["d_k"] = r.radius;
  j["k_factor"] = r.convergence;
  j["center"] = lattice_point_json(r.center);
  j["sq_radius_scaled"] = r.sq_scaled;
  j["open_ball_mass"] = mass_to_double(r.mass, r.k);
  j["rounded"] = {{"d_k", round6(r.radius, Rounding::Nearest)},
                  {"p_inf", round6(r.lower, Rounding::Down)},
                  {"p_k", round6(r.estimate, Rounding::Nearest)},
                  {"p_sup", round6(r.upper, Rounding::Up)}};
  return j;
}

inline Json spherical_to_json(const SphericalResult& r) {
  Json j;
  j["k"] = r.k;
  j["c_sph"] = r.estimate;
  j["c_sph_lower"] = r.lower;
  j["c_sph_upper"] = r.upper;
  j["d_k"] = r.radius;
  j["k_factor"] = r.convergence;
  j["sq_radius_scaled"] = r.sq_scaled;
  j["scale"] = r.scale;
  j["ball_mass"] = mass_to_double(r.mass, r.k);
  // Conjectured estimate plus a rigorous upper bound; not the measure's value.
  j["measure_upper_bound"] = r.measure_upper;
  j["measure_conjectured_estimate"] = r.measure_estimate;
  j["rounded"] = {{"c_sph_lower", round6(r.lower, Rounding::Down)},
                  {"c_sph", round6(r.estimate, Rounding::Nearest)},
                  {"c_sph_upper", round6(r.upper, Rounding::Up)},
                  {"measure_upper_bound", format_fixed(r.measure_upper, 4, Rounding::Up)},
                  {"measure_conjectured_estimate", format_fixed(r.measure_estimate, 4, Rounding::Nearest)}};
  return j;
}

inline Json bracket_to_json(const RestrictedBallBracket& r, const std::string& bounds_provenance) {
  Json j;
  j["lower"] = r.lower;
  j["estimate"] = r.estimate;
  j["upper"] = r.upper;
  j["mass_inner"] = to_double(r.mass_inner);
  j["mass_mid"] = to_double(r.mass_mid);
  j["mass_outer"] = to_double(r.mass_outer);
  j["bounds_provenance"] = bounds_provenance;
  j["rounded"] = {{"lower", round6(r.lower, Rounding::Down)},
                  {"estimate", round6(r.estimate, Rounding::Nearest)},
                  {"upper", round6(r.upper, Rounding::Up)}};
  return j;
}

inline Json width_table_to_json(const BracketWidthTable& t) {
  Json j;
  j["rows"] = Json::array();
  for (const BracketWidthRow& row : t.rows) j["rows"].push_back({{"k", row.k}, {"width", row.width}});
  j["strictly_decreasing"] = t.strictly_decreasing;
  return j;
}

}  // namespace gasket
