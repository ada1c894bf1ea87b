#pragma once

// Versioned binary cache for ApproxSet, keyed by level, so repeated CLI
// runs skip regeneration. Invalidated by a version bump or any mismatch.

#include "gasket/approx_set.hpp"

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace gasket {

inline constexpr std::uint32_t kCacheVersion = 1;
inline constexpr char kCacheMagic[4] = {'G', 'S', 'K', 'A'};

inline std::filesystem::path cache_file(const std::filesystem::path& dir, int k) {
  return dir / ("approx_set_k" + std::to_string(k) + ".bin");
}

inline void save_approx_set(const std::filesystem::path& path, const ApproxSet& set) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw domain_error("cache: cannot write " + path.string());
  os.write(kCacheMagic, 4);
  const std::uint32_t version = kCacheVersion;
  const std::uint32_t k = static_cast<std::uint32_t>(set.level());
  const std::uint64_t n = set.size();
  os.write(reinterpret_cast<const char*>(&version), sizeof version);
  os.write(reinterpret_cast<const char*>(&k), sizeof k);
  os.write(reinterpret_cast<const char*>(&n), sizeof n);
  os.write(reinterpret_cast<const char*>(set.points().data()),
           static_cast<std::streamsize>(n * sizeof(PackedPoint)));
  std::vector<std::uint8_t> tags;
  tags.reserve(set.size());
  for (const PackedPoint& p : set.points()) tags.push_back(static_cast<std::uint8_t>(set.weight_class(p)));
  os.write(reinterpret_cast<const char*>(tags.data()), static_cast<std::streamsize>(tags.size()));
}

/// Loads A_k from the cache; returns nothing on any mismatch (wrong magic,
/// version, level, truncation, or inconsistent weight tags).
inline std::optional<ApproxSet> load_approx_set(const std::filesystem::path& path, int k,
                                                int grid_log = ApproxSet::kDefaultGridLog) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  char magic[4];
  std::uint32_t version = 0, file_k = 0;
  std::uint64_t n = 0;
  is.read(magic, 4);
  is.read(reinterpret_cast<char*>(&version), sizeof version);
  is.read(reinterpret_cast<char*>(&file_k), sizeof file_k);
  is.read(reinterpret_cast<char*>(&n), sizeof n);
  if (!is || std::memcmp(magic, kCacheMagic, 4) != 0 || version != kCacheVersion ||
      file_k != static_cast<std::uint32_t>(k))
    return std::nullopt;
  std::vector<PackedPoint> pts(n);
  is.read(reinterpret_cast<char*>(pts.data()), static_cast<std::streamsize>(n * sizeof(PackedPoint)));
  std::vector<std::uint8_t> tags(n);
  is.read(reinterpret_cast<char*>(tags.data()), static_cast<std::streamsize>(n));
  if (!is) return std::nullopt;
  ApproxSet set = ApproxSet::from_points(k, std::move(pts), grid_log);
  for (std::size_t i = 0; i < set.size(); ++i)
    if (static_cast<std::uint8_t>(set.weight_class(set.points()[i])) != tags[i]) return std::nullopt;
  return set;
}

/// Cache-aware fetch: loads when possible, else generates (and saves when a
/// directory is given).
inline ApproxSet obtain_approx_set(int k, const std::filesystem::path& cache_dir = {},
                                   int grid_log = ApproxSet::kDefaultGridLog) {
  if (!cache_dir.empty()) {
    const auto path = cache_file(cache_dir, k);
    if (auto cached = load_approx_set(path, k, grid_log)) return std::move(*cached);
    ApproxSet set = ApproxSet::generate(k, grid_log);
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (!ec) save_approx_set(path, set);
    return set;
  }
  return ApproxSet::generate(k, grid_log);
}

}  // namespace gasket
