#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "aai/types.hpp"
#include "aai/world.hpp"

namespace aai {

/// Maximum candidates drawn for an item with randomized geometry.
inline constexpr int kMaxSpawnAttempts = 20;

enum class SpawnStatus {
  kPlaced,
  kSkippedAfterRetries,   // every randomized candidate collided
  kSkippedFixedPose,      // the single fixed-pose candidate collided
  kSkippedExtraAgent,     // only one agent per arena
};

std::string_view to_string(SpawnStatus s);

struct SpawnRecord {
  int item = -1;
  int instance = 0;
  std::string name;
  SpawnStatus status = SpawnStatus::kPlaced;
  int attempts = 0;
  int object_id = -1;  // -1 unless placed (the agent uses -2)
};

struct SpawnReport {
  std::vector<SpawnRecord> records;

  int attempted(std::string_view name) const;
  int placed(std::string_view name) const;
  nlohmann::json to_json() const;
};

class AgentPlacementError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// max(|positions|, |rotations|, |colors|, |sizes|), at least 1.
int instance_count(const ItemSpec& item);

/// Fully resolved parameters for one instance; no sentinel remains.
struct Candidate {
  const CatalogEntry* entry = nullptr;
  Vec3 position;  // bottom-center
  double yaw = 0.0;
  Vec3 size;
  Rgb color;
  bool randomized_geometry = false;  // any of position, rotation or size was drawn
};

/// Resolves list entry `index` of `item`. Missing entries and -1 sentinels
/// are drawn uniformly, consuming `rng` in the order position (x, z),
/// rotation, size (x, y, z), color (r, g, b).
Candidate materialize_instance(const ItemSpec& item, int index, Rng& rng);

struct SpawnAttempt {
  SpawnStatus status = SpawnStatus::kPlaced;
  int attempts = 0;
  int object_id = -1;
};

/// Places instance `index` of `item` into `world` unless every candidate
/// strictly overlaps a previously placed collision-tested collider.
SpawnAttempt try_spawn(WorldState& world, const ItemSpec& item, int index, Rng& rng);

/// Materializes an arena. The agent is placed first (from the first
/// "Agent" item, else at random), then the items in document order.
std::pair<WorldState, SpawnReport> build_world(const ArenaSpec& spec, std::uint64_t seed,
                                               const PhysicsParams& params = {});

/// Per-arena stream seed derived from a global seed.
std::uint64_t arena_seed(std::uint64_t global_seed, int arena_index);

}  // namespace aai
