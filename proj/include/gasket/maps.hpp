#pragma once

// The maps under which the gasket lattice is exactly closed: the three
// contractions f_0, f_1, f_2 and their compositions f_w, the reflections
// across the altitudes of T and of T_0, and the doubling homothety fixed at
// the contact point of S_0 and S_1. All of them send integer lattice
// coordinates to integer lattice coordinates; no rounding ever occurs.

#include "gasket/lattice.hpp"

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace gasket {

using Word = std::vector<std::uint8_t>;  // symbols over {0, 1, 2}

inline Word make_word(std::initializer_list<int> symbols) {
  Word w;
  for (int s : symbols) {
    if (s < 0 || s > 2) throw domain_error("word symbols must be 0, 1 or 2");
    w.push_back(static_cast<std::uint8_t>(s));
  }
  return w;
}

inline Word parse_word(const std::string& text) {
  Word w;
  for (char c : text) {
    if (c < '0' || c > '2') throw domain_error("word symbols must be 0, 1 or 2");
    w.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return w;
}

/// f_i(x) = x/2 + v_i, taking a level-k point to level k+1.
inline LatticePoint apply_similitude(int i, const LatticePoint& p) {
  check_level(p.level + 1);
  const std::int64_t full = pow2(p.level);
  const std::int64_t half = pow2(p.level - 1);
  switch (i) {
    case 0: return {p.a, p.b, p.level + 1};
    case 1: return {p.a + full, p.b, p.level + 1};
    case 2: return {p.a + half, p.b + half, p.level + 1};
    default: throw domain_error("similitude index must be 0, 1 or 2");
  }
}

/// f_w = f_{w_1} o ... o f_{w_n}; raises the level by |w|.
inline LatticePoint apply_word(const Word& w, LatticePoint p) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) p = apply_similitude(*it, p);
  return p;
}

enum class Reflection : std::uint8_t {
  AltitudeZ0 = 0,  // fixes z_0, swaps S_1 and S_2
  AltitudeZ1 = 1,  // fixes z_1, swaps S_0 and S_2
  AltitudeZ2 = 2,  // fixes z_2, swaps S_0 and S_1
  AltitudeT0 = 4,  // altitude of T_0 through f_2(z_0); fixes S_0 setwise
};

inline LatticePoint apply_reflection(Reflection r, const LatticePoint& p) {
  const std::int64_t full = pow2(p.level);
  const std::int64_t half = pow2(p.level - 1);
  switch (r) {
    case Reflection::AltitudeZ0:
      if ((p.a + p.b) % 2 != 0) throw domain_error("reflection: (a + b) must be even on the gasket lattice");
      return {(p.a + 3 * p.b) / 2, (p.a - p.b) / 2, p.level};
    case Reflection::AltitudeZ1:
      if ((p.a + p.b) % 2 != 0) throw domain_error("reflection: (a + b) must be even on the gasket lattice");
      return {(full + p.a - 3 * p.b) / 2, (full - p.a - p.b) / 2, p.level};
    case Reflection::AltitudeZ2:
      return {full - p.a, p.b, p.level};
    case Reflection::AltitudeT0:
      return {half - p.a, p.b, p.level};
  }
  throw domain_error("unknown reflection");
}

/// The homothety of ratio 2 fixed at the point S_0 int S_1 = (1/2, 0).
/// Takes a level-k point to level k-1.
inline LatticePoint apply_doubling(const LatticePoint& p) {
  if (p.level < 2) throw domain_error("doubling needs level >= 2");
  return {p.a - pow2(p.level - 2), p.b, p.level - 1};
}

/// A map expressible exactly on the lattice: f_w, a reflection, or the
/// doubling homothety.
class SimilarityMap {
 public:
  static SimilarityMap similitude(int i) { return SimilarityMap(make_word({i})); }
  static SimilarityMap word(Word w) { return SimilarityMap(std::move(w)); }
  static SimilarityMap reflection(Reflection r) { return SimilarityMap(r); }
  static SimilarityMap doubling() { return SimilarityMap(Doubling{}); }

  LatticePoint apply(const LatticePoint& p) const {
    if (std::holds_alternative<Word>(rep_)) return apply_word(std::get<Word>(rep_), p);
    if (std::holds_alternative<Reflection>(rep_)) return apply_reflection(std::get<Reflection>(rep_), p);
    return apply_doubling(p);
  }

 private:
  struct Doubling {};
  using Rep = std::variant<Word, Reflection, Doubling>;
  explicit SimilarityMap(Rep rep) : rep_(std::move(rep)) {}
  Rep rep_;
};

inline LatticePoint apply_map(const SimilarityMap& m, const LatticePoint& p) { return m.apply(p); }

}  // namespace gasket
