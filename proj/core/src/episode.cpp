#include "aai/episode.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace aai {

std::string_view to_string(TerminationCause c) {
  switch (c) {
    case TerminationCause::kNone: return "none";
    case TerminationCause::kGoodGoal: return "good-goal";
    case TerminationCause::kBadGoal: return "bad-goal";
    case TerminationCause::kDeathZone: return "death-zone";
    case TerminationCause::kMultiComplete: return "multi-complete";
    case TerminationCause::kTimeLimit: return "time-limit";
  }
  return "?";
}

bool lights_state(const std::vector<int>& blackouts, int step) {
  if (blackouts.empty()) return true;
  if (blackouts.size() == 1 && blackouts[0] < 0) {
    const int period = -blackouts[0];
    return (step / period) % 2 == 0;
  }
  const auto toggles = std::count_if(blackouts.begin(), blackouts.end(), [step](int b) { return b <= step; });
  return toggles % 2 == 0;
}

double hot_zone_penalty(int t) {
  if (t <= 0) return -1e-5;
  return std::min(-10.0 / t, -1e-5);
}

namespace {

bool agent_inside(const WorldState& world, const PlacedObject& zone) {
  const Vec3 c = world.agent.center();
  return point_in_rect(c.x, c.z, zone.body.position, zone.body.yaw, zone.size.x / 2.0, zone.size.z / 2.0);
}

std::size_t count_rule(const WorldState& world, RewardRule rule) {
  return static_cast<std::size_t>(std::count_if(world.objects.begin(), world.objects.end(),
                                                [rule](const PlacedObject& o) { return o.entry->reward == rule && o.entry->is_sphere(); }));
}

}  // namespace

StepOutcome compute_step_reward(WorldState& world, const ContactSet& contacts, int t, int step) {
  StepOutcome out;
  out.terms.step_penalty = t > 0 ? -1.0 / t : 0.0;

  TerminationCause goal_cause = TerminationCause::kNone;
  bool took_multi = false;
  for (const auto& o : world.objects) {
    if (!o.entry->is_sphere() || !contacts.contains(o.id)) continue;
    const double d = o.size.x;
    switch (o.entry->reward) {
      case RewardRule::kGood:
        out.terms.goals += d;
        if (goal_cause == TerminationCause::kNone) goal_cause = TerminationCause::kGoodGoal;
        break;
      case RewardRule::kBad:
        out.terms.goals -= d;
        if (goal_cause == TerminationCause::kNone) goal_cause = TerminationCause::kBadGoal;
        break;
      case RewardRule::kMulti:
        out.terms.goals += d;
        took_multi = true;
        break;
      default:
        break;
    }
    out.consumed.push_back(o.id);
  }
  for (int id : out.consumed) world.remove(id);
  if (took_multi && goal_cause == TerminationCause::kNone && count_rule(world, RewardRule::kMulti) == 0 &&
      count_rule(world, RewardRule::kGood) == 0) {
    goal_cause = TerminationCause::kMultiComplete;
  }

  bool in_death = false;
  bool in_hot = false;
  for (const auto& o : world.objects) {
    if (!o.entry->is_zone() || !agent_inside(world, o)) continue;
    if (o.entry->reward == RewardRule::kDeath) in_death = true;
    if (o.entry->reward == RewardRule::kHot) in_hot = true;
  }
  if (in_death) out.terms.death_zone = -1.0;
  if (in_hot) out.terms.hot_zone = hot_zone_penalty(t);

  out.reward = out.terms.total();
  if (goal_cause != TerminationCause::kNone) {
    out.cause = goal_cause;
  } else if (in_death) {
    out.cause = TerminationCause::kDeathZone;
  } else if (t > 0 && step >= t) {
    out.cause = TerminationCause::kTimeLimit;
  }
  out.done = out.cause != TerminationCause::kNone;
  return out;
}

Environment::Environment(int resolution, PhysicsParams params) : resolution_(resolution), params_(params) {
  check_resolution(resolution);
}

std::map<int, ObservationBundle> Environment::reset(const std::optional<ArenaConfigDoc>& doc,
                                                    std::optional<std::uint64_t> seed) {
  if (doc) doc_ = *doc;
  if (!doc_) throw NotConfiguredError("reset before any configuration was supplied");
  seed_ = seed ? *seed : hash_seed(seed_, ++resets_);
  arenas_.clear();
  std::map<int, ObservationBundle> out;
  for (const auto& [index, spec] : doc_->arenas) {
    auto [world, report] = build_world(spec, arena_seed(seed_, index), params_);
    Arena a{std::move(world), std::move(report), {}, {}};
    a.state.t = spec.t;
    a.state.lights_on = lights_state(spec.blackouts, 0);
    auto [it, inserted] = arenas_.emplace(index, std::move(a));
    out.emplace(index, observe(it->second, 0.0));
  }
  return out;
}

ObservationBundle Environment::observe(Arena& a, double reward) const {
  ObservationBundle b;
  b.frame = a.state.lights_on ? render(a.world, resolution_) : black_frame(resolution_);
  b.velocity = local_velocity(a.world.agent.body);
  b.reward = reward;
  b.done = a.state.done;
  b.cause = a.state.cause;
  b.step = a.state.step;
  b.cumulative = a.state.cumulative;
  b.lights_on = a.state.lights_on;
  return b;
}

std::map<int, ObservationBundle> Environment::step(const std::map<int, Action>& actions) {
  if (!doc_ || arenas_.empty()) throw NotConfiguredError("step before reset");
  for (const auto& [index, action] : actions) {
    arena(index);
    if (!action.valid()) throw InvalidActionError(fmt::format("invalid action ({}, {}) for arena {}", action.move, action.rotate, index));
  }
  std::map<int, ObservationBundle> out;
  for (const auto& [index, action] : actions) {
    Arena& a = arena(index);
    if (a.state.done) {
      ObservationBundle b = a.terminal;
      b.reward = 0.0;
      out.emplace(index, std::move(b));
      continue;
    }
    apply_agent_action(a.world, action);
    const ContactSet contacts = step_physics(a.world);
    ++a.state.step;
    const StepOutcome r = compute_step_reward(a.world, contacts, a.state.t, a.state.step);
    a.state.cumulative += r.reward;
    a.state.done = r.done;
    a.state.cause = r.cause;
    a.state.lights_on = lights_state(a.world.blackouts, a.state.step);
    ObservationBundle b = observe(a, r.reward);
    if (b.done) a.terminal = b;
    out.emplace(index, std::move(b));
  }
  return out;
}

std::vector<int> Environment::arenas() const {
  std::vector<int> out;
  for (const auto& [index, a] : arenas_) out.push_back(index);
  return out;
}

Environment::Arena& Environment::arena(int index) {
  auto it = arenas_.find(index);
  if (it == arenas_.end()) throw UnknownArenaError(fmt::format("no arena {}", index));
  return it->second;
}

const Environment::Arena& Environment::arena(int index) const {
  auto it = arenas_.find(index);
  if (it == arenas_.end()) throw UnknownArenaError(fmt::format("no arena {}", index));
  return it->second;
}

const WorldState& Environment::world(int index) const { return arena(index).world; }
const EpisodeState& Environment::state(int index) const { return arena(index).state; }
const SpawnReport& Environment::spawn_report(int index) const { return arena(index).report; }

const ArenaConfigDoc& Environment::doc() const {
  if (!doc_) throw NotConfiguredError("no configuration supplied");
  return *doc_;
}

}  // namespace aai
