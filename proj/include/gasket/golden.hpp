#pragma once

// Published reference values the CLI diffs against: the centred-measure
// table for k = 5..14 and the k = 14 spherical results. Six-decimal
// presentation values; the diff re-applies the same rounding rules.

#include "gasket/density.hpp"

#include <array>
#include <optional>

namespace gasket {

struct GoldenCentredRow {
  int k;
  double d_k;
  double c_inf;
  double c_k;
  double c_sup;
};

inline constexpr std::array<GoldenCentredRow, 10> kGoldenCentred = {{
    {5, 0.125, 0.409736, 0.843750, 2.700000},
    {6, 0.143205, 0.622414, 0.930364, 1.255991},
    {7, 0.143205, 0.790389, 0.978694, 1.141810},
    {8, 0.144690, 0.894667, 0.999143, 1.068851},
    {9, 0.144690, 0.945925, 1.000593, 1.035149},
    {10, 0.147354, 0.975686, 1.003735, 1.016677},
    {11, 0.145596, 0.990358, 1.004556, 1.011856},
    {12, 0.145834, 0.997550, 1.004691, 1.007754},
    {13, 0.145957, 1.001285, 1.004867, 1.006332},
    {14, 0.145957, 1.003109, 1.004903, 1.005611},
}};

inline std::optional<GoldenCentredRow> golden_centred_row(int k) {
  for (const GoldenCentredRow& row : kGoldenCentred)
    if (row.k == k) return row;
  return std::nullopt;
}

/// Reference centred bounds for the restricted-ball bracket; available for
/// levels covered by the table.
inline std::optional<CentredBounds> golden_centred_bounds(int k) {
  if (const auto row = golden_centred_row(k)) return CentredBounds{row->c_inf, row->c_k, row->c_sup};
  return std::nullopt;
}

struct GoldenSpherical {
  int k;
  double c_sph;
  double lower;
  double upper;
  double d_k;
};

inline constexpr GoldenSpherical kGoldenSpherical{14, 1.160630, 1.160235, 1.161408, 0.3108};

}  // namespace gasket
