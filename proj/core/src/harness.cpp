#include "aai/harness.hpp"

#include <map>
#include <stdexcept>

#include "aai/config_io.hpp"

namespace aai {

namespace {

int pick_arena(const ArenaConfigDoc& doc, int wanted) {
  if (doc.arenas.empty()) throw std::invalid_argument("config has no arenas");
  if (wanted < 0) return doc.arenas.begin()->first;
  if (!doc.arenas.contains(wanted)) throw UnknownArenaError("config has no arena " + std::to_string(wanted));
  return wanted;
}

}  // namespace

EpisodeLog run_episode(Agent& agent, Environment& env, const ArenaConfigDoc& doc, std::uint64_t seed,
                       const RunOptions& options) {
  const int arena = pick_arena(doc, options.arena);
  auto first = env.reset(doc, seed);
  agent.begin_episode(seed);
  ObservationBundle obs = std::move(first.at(arena));
  const int t = doc.arenas.at(arena).t;
  const int cap = t > 0 ? t : options.max_steps;
  while (!obs.done && obs.step < cap) {
    const Action a = agent.act(obs);
    obs = std::move(env.step({{arena, a}}).at(arena));
  }
  const auto& state = env.state(arena);
  agent.end_episode(state);
  EpisodeLog log;
  log.seed = seed;
  log.reward = state.cumulative;
  log.steps = state.step;
  log.success = is_success(state.cumulative);
  log.cause = state.cause;
  return log;
}

RunStats run_episodes(Agent& agent, const ArenaConfigDoc& doc, int episodes, std::uint64_t seed,
                      const RunOptions& options) {
  if (episodes < 0) throw std::invalid_argument("episode count must be non-negative");
  RunStats stats;
  stats.episodes = episodes;
  if (episodes == 0) return stats;
  Environment env(options.resolution, options.physics);
  double total = 0.0;
  int successes = 0;
  for (int i = 0; i < episodes; ++i) {
    EpisodeLog log = run_episode(agent, env, doc, hash_seed(seed, static_cast<std::uint64_t>(i)), options);
    log.episode = i;
    total += log.reward;
    successes += log.success ? 1 : 0;
    stats.log.push_back(log);
  }
  stats.average_reward = total / episodes;
  stats.success_rate = static_cast<double>(successes) / episodes;
  return stats;
}

void CurriculumTrigger::check() const {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in (0, 1]");
  if (window < 1) throw std::invalid_argument("window must be at least 1");
}

bool CurriculumTrigger::fires(int successes_in_window, int episodes_on_level) const {
  if (episodes_on_level < window) return false;
  return successes_in_window >= threshold * window - 1e-9 * window;
}

CurriculumState::CurriculumState(int levels, CurriculumTrigger trigger)
    : levels_(levels), trigger_(trigger), recent_(static_cast<std::size_t>(trigger.window), false) {
  if (levels < 1) throw std::invalid_argument("a curriculum needs at least one level");
  trigger_.check();
}

bool CurriculumState::record(bool success) {
  auto slot = recent_.begin() + episodes_on_level_ % trigger_.window;
  if (episodes_on_level_ >= trigger_.window && *slot) --window_successes_;
  *slot = success;
  if (success) ++window_successes_;
  ++episodes_on_level_;
  if (level_ + 1 < levels_ && trigger_.fires(window_successes_, episodes_on_level_)) {
    ++level_;
    episodes_on_level_ = 0;
    window_successes_ = 0;
    std::fill(recent_.begin(), recent_.end(), false);
    return true;
  }
  return false;
}

CurriculumLog run_curriculum(const std::vector<ArenaConfigDoc>& levels, const CurriculumTrigger& trigger, Agent& agent,
                             std::uint64_t seed, int episode_budget, const RunOptions& options) {
  CurriculumState state(static_cast<int>(levels.size()), trigger);
  CurriculumLog log;
  Environment env(options.resolution, options.physics);
  for (int i = 0; i < episode_budget; ++i) {
    const int level = state.level();
    const EpisodeLog ep =
        run_episode(agent, env, levels[static_cast<std::size_t>(level)], hash_seed(seed, static_cast<std::uint64_t>(i)), options);
    log.entries.push_back({i, level, ep.success, ep.reward});
    if (state.record(ep.success)) log.advanced_after.push_back(i);
  }
  log.final_level = state.level();
  return log;
}

BatteryReport run_battery(const std::vector<ManifestEntry>& manifest, Agent& agent, std::uint64_t seed,
                          const RunOptions& options) {
  BatteryReport report;
  report.agent = agent.name();
  report.seed = seed;
  if (manifest.empty()) return report;
  Environment env(options.resolution, options.physics);
  struct Sum {
    int entries = 0;
    int passed = 0;
    double reward = 0.0;
  };
  std::map<int, Sum> sums;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto& m = manifest[i];
    if (!std::filesystem::exists(m.config)) throw std::runtime_error("missing config file " + m.config.string());
    const ArenaConfigDoc doc = load_config(m.config);
    const EpisodeLog ep = run_episode(agent, env, doc, hash_seed(seed, i), options);
    EntryResult r;
    r.name = m.name;
    r.category = m.category;
    r.difficulty = m.difficulty;
    r.threshold = m.threshold;
    r.reward = ep.reward;
    r.steps = ep.steps;
    r.passed = ep.reward > m.threshold;
    r.cause = ep.cause;
    auto& s = sums[category_rank(m.category)];
    ++s.entries;
    s.passed += r.passed ? 1 : 0;
    s.reward += r.reward;
    report.entries.push_back(std::move(r));
  }
  double pass_sum = 0.0;
  for (const auto& [rank, s] : sums) {
    CategoryReport c;
    c.category = std::string(kBatteryCategories[static_cast<std::size_t>(rank)]);
    c.entries = s.entries;
    c.pass_rate = static_cast<double>(s.passed) / s.entries;
    c.average_reward = s.reward / s.entries;
    pass_sum += c.pass_rate;
    report.categories.push_back(std::move(c));
  }
  report.overall = pass_sum / static_cast<double>(report.categories.size());
  return report;
}

}  // namespace aai
