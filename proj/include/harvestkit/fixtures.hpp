#pragma once

// Frozen oracle values used by the regression tests and `harvestkit validate`.

#include "harvestkit/specfun.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace harvestkit {

inline constexpr std::string_view kFixtureFile = "oracle_fixtures.tsv";

namespace fixture {
inline constexpr std::string_view g2_a1_w1 = "g2_oracle_a1_w1";
inline constexpr std::string_view L_a1 = "L_a1_s0.125";
inline constexpr std::string_view Lab_a1_b2 = "Lab_a1_b2_s0.125";
inline constexpr std::string_view Lab_a1_b1000 = "Lab_a1_b1000_s0.125";
inline constexpr std::string_view M_a1_b2 = "M_a1_b2_s0.125";
inline constexpr std::string_view M_a1_b1000 = "M_a1_b1000_s0.125";
inline constexpr std::string_view dispersion_rubidium = "dispersion_rubidium_rel_diff";
inline constexpr std::string_view point_rubidium = "point_rubidium_N";
} // namespace fixture

struct FixtureRow {
  std::string name;
  std::string params;     ///< human-readable point description
  complex value{};
  std::string provenance; ///< which oracle produced the value
};

struct FixtureSet {
  std::vector<FixtureRow> rows;
  std::string hash; ///< FNV-1a of the file contents, 16 hex digits

  /// Throws std::out_of_range for unknown names.
  const FixtureRow& get(std::string_view name) const;
  bool contains(std::string_view name) const;
};

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

/// $HARVESTKIT_FIXTURES if set, the build-time fixture directory otherwise.
std::filesystem::path fixture_dir();

/// Reads and checks the per-row hashes. Throws std::runtime_error on a
/// missing file or a corrupted row.
FixtureSet load_fixtures(const std::filesystem::path& dir = fixture_dir());

/// Serialized table, as written by `write_fixtures`.
std::string format_fixtures(const std::vector<FixtureRow>& rows);

void write_fixtures(const std::vector<FixtureRow>& rows, const std::filesystem::path& dir);

} // namespace harvestkit
