#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aai/types.hpp"

namespace aai {

inline constexpr std::array<std::string_view, 10> kBatteryCategories = {
    "basic-food",       "preferences",     "obstacles",         "avoidance",  "spatial-reasoning",
    "robustness",       "internal-models", "object-permanence", "numerosity", "causal-reasoning",
};

bool is_battery_category(std::string_view name);
int category_rank(std::string_view name);

struct BatteryEntry {
  std::string category;
  std::string name;  // file stem, unique within a battery
  int difficulty = 1;
  ArenaConfigDoc doc;
  double threshold = 0.0;
};

/// Three graded configs per category.
std::vector<BatteryEntry> gen_sample_battery(std::uint64_t seed);

struct ManifestEntry {
  std::string category;
  std::filesystem::path config;  // resolved against the manifest directory
  double threshold = 0.0;
  std::string name;
  int difficulty = 0;
};

/// Writes one config per entry plus manifest.json; returns the manifest path.
std::filesystem::path write_battery(const std::vector<BatteryEntry>& entries, const std::filesystem::path& dir);

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path);

}  // namespace aai
