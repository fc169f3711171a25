#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "aai/physics.hpp"
#include "aai/render.hpp"
#include "aai/spawn.hpp"
#include "aai/types.hpp"

namespace aai {

enum class TerminationCause { kNone, kGoodGoal, kBadGoal, kDeathZone, kMultiComplete, kTimeLimit };

std::string_view to_string(TerminationCause c);

/// True when the light is on at `step` (the reset frame is step 0).
/// Toggle list: on until the first listed step, toggling at each one.
/// Single negative value -p: on for [0, p), off for [p, 2p), and so on.
bool lights_state(const std::vector<int>& blackouts, int step);

/// HotZone penalty per step for limit T.
double hot_zone_penalty(int t);

struct RewardTerms {
  double step_penalty = 0.0;
  double goals = 0.0;
  double death_zone = 0.0;
  double hot_zone = 0.0;

  double total() const { return step_penalty + goals + death_zone + hot_zone; }
};

struct StepOutcome {
  double reward = 0.0;
  bool done = false;
  TerminationCause cause = TerminationCause::kNone;
  RewardTerms terms;
  std::vector<int> consumed;  // goal ids removed from the world
};

/// Scores one action step and removes the goals that were touched.
/// `step` is the 1-based index of the step just simulated.
StepOutcome compute_step_reward(WorldState& world, const ContactSet& contacts, int t, int step);

struct ObservationBundle {
  Frame frame;
  Vec3 velocity;  // forward, right, up
  double reward = 0.0;
  bool done = false;
  TerminationCause cause = TerminationCause::kNone;
  int step = 0;
  double cumulative = 0.0;
  bool lights_on = true;
};

struct EpisodeState {
  int step = 0;
  int t = 0;
  double cumulative = 0.0;
  bool lights_on = true;
  bool done = false;
  TerminationCause cause = TerminationCause::kNone;
};

class NotConfiguredError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class UnknownArenaError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Multi-arena environment with reset/step semantics.
class Environment {
 public:
  explicit Environment(int resolution = 84, PhysicsParams params = {});

  /// Rebuilds every arena. Without a document the previous one is reused;
  /// without a seed a fresh one is derived from the previous seed.
  std::map<int, ObservationBundle> reset(const std::optional<ArenaConfigDoc>& doc = std::nullopt,
                                         std::optional<std::uint64_t> seed = std::nullopt);

  /// Steps the referenced arenas. Finished arenas ignore their action and
  /// return the terminal bundle with zero reward.
  std::map<int, ObservationBundle> step(const std::map<int, Action>& actions);

  bool configured() const { return doc_.has_value(); }
  int resolution() const { return resolution_; }
  std::uint64_t seed() const { return seed_; }
  std::vector<int> arenas() const;
  const WorldState& world(int arena) const;
  const EpisodeState& state(int arena) const;
  const SpawnReport& spawn_report(int arena) const;
  const ArenaConfigDoc& doc() const;

 private:
  struct Arena {
    WorldState world;
    SpawnReport report;
    EpisodeState state;
    ObservationBundle terminal;
  };

  ObservationBundle observe(Arena& a, double reward) const;
  Arena& arena(int index);
  const Arena& arena(int index) const;

  int resolution_;
  PhysicsParams params_;
  std::optional<ArenaConfigDoc> doc_;
  std::uint64_t seed_ = 0;
  std::uint64_t resets_ = 0;
  std::map<int, Arena> arenas_;
};

}  // namespace aai
