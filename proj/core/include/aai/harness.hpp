#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aai/agents.hpp"
#include "aai/battery.hpp"
#include "aai/episode.hpp"

namespace aai {

/// An episode counts as a success when its total reward is positive.
inline bool is_success(double total_reward) { return total_reward > 0.0; }

struct RunOptions {
  int resolution = 84;
  int arena = -1;            // -1 selects the lowest arena index
  int max_steps = 5000;      // cap for episodes with T = 0
  PhysicsParams physics;
};

struct EpisodeLog {
  int episode = 0;
  std::uint64_t seed = 0;
  double reward = 0.0;
  int steps = 0;
  bool success = false;
  TerminationCause cause = TerminationCause::kNone;
};

struct RunStats {
  int episodes = 0;
  std::optional<double> average_reward;  // undefined for zero episodes
  std::optional<double> success_rate;
  std::vector<EpisodeLog> log;
};

EpisodeLog run_episode(Agent& agent, Environment& env, const ArenaConfigDoc& doc, std::uint64_t seed,
                       const RunOptions& options = {});

/// Episode i uses seed hash_seed(seed, i).
RunStats run_episodes(Agent& agent, const ArenaConfigDoc& doc, int episodes, std::uint64_t seed,
                      const RunOptions& options = {});

struct CurriculumTrigger {
  double threshold = 0.85;
  int window = 600;

  /// Throws std::invalid_argument unless 0 < threshold <= 1 and window >= 1.
  void check() const;
  /// Inclusive at the boundary: 510 of 600 fires at 0.85.
  bool fires(int successes_in_window, int episodes_on_level) const;
};

/// Level bookkeeping shared by real and synthetic runs.
class CurriculumState {
 public:
  CurriculumState(int levels, CurriculumTrigger trigger);

  /// Records one episode on the current level; true when it advanced.
  bool record(bool success);
  int level() const { return level_; }
  int episodes_on_level() const { return episodes_on_level_; }
  int window_successes() const { return window_successes_; }

 private:
  int levels_;
  CurriculumTrigger trigger_;
  int level_ = 0;
  int episodes_on_level_ = 0;
  int window_successes_ = 0;
  std::vector<bool> recent_;  // ring buffer over the trailing window
};

struct CurriculumEntry {
  int episode = 0;
  int level = 0;  // level the episode ran on
  bool success = false;
  double reward = 0.0;
};

struct CurriculumLog {
  std::vector<CurriculumEntry> entries;
  std::vector<int> advanced_after;  // episode indices that triggered an advance
  int final_level = 0;
};

CurriculumLog run_curriculum(const std::vector<ArenaConfigDoc>& levels, const CurriculumTrigger& trigger, Agent& agent,
                             std::uint64_t seed, int episode_budget, const RunOptions& options = {});

struct EntryResult {
  std::string name;
  std::string category;
  int difficulty = 0;
  double threshold = 0.0;
  double reward = 0.0;
  int steps = 0;
  bool passed = false;
  TerminationCause cause = TerminationCause::kNone;
};

struct CategoryReport {
  std::string category;
  int entries = 0;
  double pass_rate = 0.0;
  double average_reward = 0.0;
};

struct BatteryReport {
  std::string agent;
  std::uint64_t seed = 0;
  std::vector<EntryResult> entries;        // manifest order
  std::vector<CategoryReport> categories;  // canonical order, present categories only
  std::optional<double> overall;           // mean of category pass rates
};

/// One episode per entry with seed hash_seed(seed, i); an entry passes when
/// its reward exceeds the entry threshold.
BatteryReport run_battery(const std::vector<ManifestEntry>& manifest, Agent& agent, std::uint64_t seed,
                          const RunOptions& options = {});

}  // namespace aai
