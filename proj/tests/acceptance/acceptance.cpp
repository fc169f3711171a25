// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "aai/agents.hpp"
#include "aai/battery.hpp"
#include "aai/client.hpp"
#include "aai/config_io.hpp"
#include "aai/harness.hpp"
#include "aai/physics.hpp"
#include "aai/protocol.hpp"
#include "aai/server.hpp"
#include "aai/solvability.hpp"
#include "aai/spawn.hpp"
#include "aai/taskgen.hpp"
#include "aai/validate.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string data(const std::string& name) { return std::string(AAI_TEST_DATA) + "/" + name; }

aai::ItemSpec item(std::string name, std::vector<aai::Vec3> positions = {}, std::vector<aai::Vec3> sizes = {},
                   std::vector<double> rotations = {}) {
  aai::ItemSpec s;
  s.name = std::move(name);
  s.positions = std::move(positions);
  s.sizes = std::move(sizes);
  s.rotations = std::move(rotations);
  return s;
}

aai::ArenaConfigDoc single(aai::ArenaSpec spec) {
  aai::ArenaConfigDoc d;
  d.arenas[0] = std::move(spec);
  return d;
}

aai::ArenaSpec arena_of(std::vector<aai::ItemSpec> items, int t = 0, std::vector<int> blackouts = {}) {
  aai::ArenaSpec a;
  a.t = t;
  a.blackouts = std::move(blackouts);
  a.items = std::move(items);
  return a;
}

// 1
Outcome config_fidelity() {
  Outcome out;
  const auto t0 = Clock::now();
  for (int i = 1; i <= 4; ++i) {
    const auto doc = aai::load_config(data(fmt::format("config{}.yaml", i)));
    const auto v = aai::validate_config(doc);
    if (!v.empty()) out.fail(fmt::format("config {}: {} violations", i, v.size()));
    if (!(aai::parse_config(aai::serialize_config(doc)) == doc)) out.fail(fmt::format("config {} round trip", i));
    for (const auto& [index, spec] : doc.arenas) {
      const auto [world, report] = aai::build_world(spec, aai::arena_seed(1, index));
      std::map<std::string, int> listed;
      for (const auto& it : spec.items) listed[it.name] += it.name == "Agent" ? 1 : aai::instance_count(it);
      for (const auto& [name, n] : listed) {
        if (name == "Agent") continue;
        if (report.attempted(name) != n) out.fail(fmt::format("config {} {}: attempted {} != {}", i, name, report.attempted(name), n));
      }
    }
  }
  const auto doc1 = aai::load_config(data("config1.yaml"));
  const auto [w1, r1] = aai::build_world(doc1.arenas.at(0), 1);
  const int walls = r1.placed("Wall"), tunnels = r1.placed("CylinderTunnel"), goals = r1.placed("GoodGoal");
  if (walls != 2 || tunnels != 3 || goals != 1) out.fail(fmt::format("config 1 placed {}/{}/{}", walls, tunnels, goals));
  const double dt = seconds_since(t0);
  if (dt >= 1.0) out.fail(fmt::format("took {:.2f} s", dt));
  if (out.pass) out.detail = fmt::format("4 listings; config 1 = {} walls, {} tunnels, {} goal; {:.3f} s", walls, tunnels, goals, dt);
  return out;
}

// 2
Outcome step_penalty() {
  Outcome out;
  aai::NullAgent agent;
  aai::RunOptions opts;
  opts.resolution = 8;
  std::string sums;
  for (int t : {1, 250, 600}) {
    const auto doc = single(arena_of({}, t));
    aai::Environment env(opts.resolution);
    const auto log = aai::run_episode(agent, env, doc, 5, opts);
    if (std::abs(log.reward + 1.0) > 1e-9) out.fail(fmt::format("T={} sum {:.17g}", t, log.reward));
    if (log.steps != t) out.fail(fmt::format("T={} ran {} steps", t, log.steps));
    sums += fmt::format(" T={}:{:.3g}", t, std::abs(log.reward + 1.0));
  }
  if (out.pass) out.detail = "|sum+1|" + sums;
  return out;
}

// Runs a fixed action script through the raw engine and returns every step outcome.
std::vector<aai::StepOutcome> script(aai::WorldState& w, int t, int steps, aai::Action a) {
  std::vector<aai::StepOutcome> r;
  for (int s = 1; s <= steps; ++s) {
    aai::apply_agent_action(w, a);
    const auto c = aai::step_physics(w);
    r.push_back(aai::compute_step_reward(w, c, t, s));
    if (r.back().done) break;
  }
  return r;
}

// 3
Outcome reward_table() {
  Outcome out;
  const aai::Vec3 agent{20, 0, 10};
  auto world = [&](std::vector<aai::ItemSpec> extra) {
    std::vector<aai::ItemSpec> items{item("Agent", {agent}, {}, {0})};
    for (auto& e : extra) items.push_back(std::move(e));
    return aai::build_world(arena_of(std::move(items)), 1).first;
  };
  for (double d : {1.0, 2.5, 4.0}) {
    for (const char* name : {"GoodGoal", "BadGoal"}) {
      auto w = world({item(name, {{20, 0, 12 + d}}, {{d, d, d}})});
      const auto r = script(w, 0, 200, {1, 0});
      const double want = std::string(name) == "GoodGoal" ? d : -d;
      if (r.empty() || !r.back().done || r.back().reward != want) {
        out.fail(fmt::format("{} d={} gave {}", name, d, r.empty() ? 0.0 : r.back().reward));
      }
    }
  }
  {
    auto w = world({item("DeathZone", {{20, 0, 14}}, {{6, 0, 2}}, {0})});
    const auto r = script(w, 0, 200, {1, 0});
    if (r.back().reward != -1.0 || r.back().cause != aai::TerminationCause::kDeathZone) out.fail("death zone");
  }
  {
    auto w = world({item("HotZone", {{20, 0, 24}}, {{10, 0, 24}}, {0})});
    const auto drive = script(w, 250, 12, {1, 0});
    const auto rest = script(w, 250, 200, {0, 0});
    int standing = 0;
    for (const auto& o : rest) {
      if (o.done) out.fail("hot zone terminated");
      if (o.terms.hot_zone != -0.04) out.fail(fmt::format("hot zone term {}", o.terms.hot_zone));
      ++standing;
    }
    if (drive.back().terms.hot_zone != -0.04 || standing != 200) out.fail("hot zone not entered");
  }
  {
    auto w = world({item("GoodGoalMulti", {{20, 0, 13}, {20, 0, 17}}, {{1, 1, 1}, {1, 1, 1}})});
    const auto r = script(w, 0, 300, {1, 0});
    int paid = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (r[i].terms.goals == 1.0) ++paid;
      if (r[i].done != (i + 1 == r.size())) out.fail("multi terminated early");
    }
    if (paid != 2 || r.back().cause != aai::TerminationCause::kMultiComplete) out.fail("multi did not complete");
  }
  {
    auto w = world({item("GoodGoalMulti", {{20, 0, 13}}, {{1, 1, 1}}), item("GoodGoal", {{5, 0, 35}}, {{1, 1, 1}})});
    const auto r = script(w, 0, 60, {1, 0});
    double got = 0.0;
    for (const auto& o : r) got += o.reward;
    if (r.back().done || got != 1.0) out.fail("gold with green present terminated");
  }
  if (out.pass) out.detail = "GoodGoal/BadGoal d in {1,2.5,4}, DeathZone, HotZone -0.04 x200, GoodGoalMulti both cases";
  return out;
}

// Reference toggle simulator: walk the steps and flip at every scheduled step.
std::vector<bool> reference_lights(const std::vector<int>& blackouts, int steps) {
  std::vector<bool> on(static_cast<std::size_t>(steps + 1), true);
  bool state = true;
  std::set<int> flips;
  if (blackouts.size() == 1 && blackouts[0] < 0) {
    for (int s = -blackouts[0]; s <= steps; s += -blackouts[0]) flips.insert(s);
  } else {
    flips.insert(blackouts.begin(), blackouts.end());
  }
  for (int s = 0; s <= steps; ++s) {
    if (flips.contains(s)) state = !state;
    on[static_cast<std::size_t>(s)] = state;
  }
  return on;
}

// 4
Outcome blackouts() {
  Outcome out;
  auto check = [&](const std::vector<int>& sched, int t, std::uint64_t seed) {
    aai::Environment env(4);
    const auto want = reference_lights(sched, t);
    auto obs = env.reset(single(arena_of({item("Agent", {{20, 0, 20}})}, t, sched)), seed).at(0);
    for (int s = 0;; ++s) {
      if (obs.frame.all_zero() == want[static_cast<std::size_t>(s)]) {
        out.fail(fmt::format("schedule size {} step {}", sched.size(), s));
        return;
      }
      if (obs.done) break;
      obs = env.step({{0, {0, 1}}}).at(0);
    }
  };
  check({5, 10, 15, 20, 25}, 40, 1);
  check({-20}, 100, 1);
  const auto walk = reference_lights({5, 10, 15, 20, 25}, 30);
  if (!(walk[4] && !walk[5] && walk[12] && !walk[25])) out.fail("walkthrough");
  const auto period = reference_lights({-20}, 50);
  if (!(!period[25] && period[45])) out.fail("period walkthrough");
  aai::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> sched;
    const int t = static_cast<int>(rng.uniform_int(5, 80));
    if (rng.bernoulli(0.3)) {
      sched = {-static_cast<int>(rng.uniform_int(1, 15))};
    } else {
      std::set<int> s;
      const int n = static_cast<int>(rng.uniform_int(0, 8));
      for (int i = 0; i < n; ++i) s.insert(static_cast<int>(rng.uniform_int(1, t + 5)));
      sched.assign(s.begin(), s.end());
    }
    check(sched, t, static_cast<std::uint64_t>(trial));
  }
  if (out.pass) out.detail = "[5,10,15,20,25], [-20] and 200 random schedules match the toggle simulator";
  return out;
}

bool overlap_free(const aai::WorldState& w) {
  const auto agent = w.agent.collider();
  const auto c = w.agent.center();
  for (std::size_t i = 0; i < w.objects.size(); ++i) {
    const auto& a = w.objects[i];
    if (a.entry->is_zone()) {
      const auto half = aai::footprint_half_extents(0.0, a.size);
      if (aai::disc_overlaps_rect(c.x, c.z, aai::kAgentRadius, a.body.position, a.body.yaw, half.x, half.z)) return false;
    } else if (aai::overlap_test(a.collider, agent)) {
      return false;
    }
    for (std::size_t j = i + 1; j < w.objects.size(); ++j) {
      const auto& b = w.objects[j];
      if (a.entry->is_zone() != b.entry->is_zone()) continue;
      if (aai::overlap_test(a.collider, b.collider)) return false;
    }
  }
  return true;
}

// 5
Outcome spawn_safety() {
  Outcome out;
  const auto t0 = Clock::now();
  std::vector<std::string> names;
  for (const auto& e : aai::catalog()) names.push_back(e.name);
  aai::Rng pick(77);
  int builds = 0, max_attempts = 0, placed = 0;
  for (int b = 0; b < 10000; ++b) {
    std::vector<aai::ItemSpec> items;
    const int n = static_cast<int>(pick.uniform_int(1, 12));
    for (int i = 0; i < n; ++i) items.push_back(item(names[static_cast<std::size_t>(pick.uniform_int(0, static_cast<std::int64_t>(names.size()) - 1))]));
    const auto spec = arena_of(std::move(items));
    const auto seed = pick.next_u64();
    const auto [w, r] = aai::build_world(spec, seed);
    ++builds;
    for (const auto& rec : r.records) {
      max_attempts = std::max(max_attempts, rec.attempts);
      placed += rec.status == aai::SpawnStatus::kPlaced ? 1 : 0;
    }
    if (!overlap_free(w)) out.fail(fmt::format("overlap in build {}", b));
    if (b % 10 == 0) {
      const auto [w2, r2] = aai::build_world(spec, seed);
      if (r2.to_json() != r.to_json() || w2.objects.size() != w.objects.size()) out.fail("nondeterministic build");
      for (std::size_t i = 0; i < w.objects.size() && i < w2.objects.size(); ++i) {
        if (w.objects[i].body.position != w2.objects[i].body.position || w.objects[i].size != w2.objects[i].size) {
          out.fail("nondeterministic pose");
        }
      }
    }
  }
  if (max_attempts > aai::kMaxSpawnAttempts) out.fail(fmt::format("{} attempts", max_attempts));
  const double dt = seconds_since(t0);
  if (dt >= 60.0) out.fail(fmt::format("took {:.1f} s", dt));
  if (out.pass) out.detail = fmt::format("{} builds, {} placements, max {} attempts, {:.1f} s", builds, placed, max_attempts, dt);
  return out;
}

aai::WorldState physics_world(std::vector<aai::ItemSpec> items) {
  return aai::build_world(arena_of(std::move(items)), 1).first;
}

// 6
Outcome physics_sanity() {
  Outcome out;
  double worst_fall = 0.0;
  for (double h : {0.5, 1.0, 2.0, 4.0, 8.0, 16.0}) {
    auto w = physics_world({item("Agent", {{20, 0, 20}})});
    w.agent.body.position.y = h;
    aai::ContactSet c;
    int n = 0;
    do {
      aai::substep(w, c);
      ++n;
    } while (w.agent.body.velocity.y < 0.0 && n < 100000);
    const double err = std::abs(n * w.params.dt - std::sqrt(2.0 * h / w.params.gravity));
    worst_fall = std::max(worst_fall, err);
    if (err > w.params.dt) out.fail(fmt::format("fall from {} off by {:.4f} s", h, err));
  }

  aai::Rng rng(6);
  const aai::PhysicsParams params;
  const double terminal = params.drive_force / (aai::kAgentMass * params.drag);
  int crossed = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    const double yaw = rng.uniform(0, 360);
    const aai::Vec3 centre{20, 0, 20};
    const aai::Vec3 n = aai::heading_vector(yaw);
    const aai::Vec3 side = aai::heading_vector(yaw + 90);
    const aai::Vec3 start = centre - n * rng.uniform(0.7, 2.0) + side * rng.uniform(-3, 3);
    auto w = physics_world({item("Agent", {start}, {}, {yaw}), item("Wall", {centre}, {{8, 2, 0.1}}, {yaw})});
    if (w.objects.size() != 1) {
      out.fail("wall not placed");
      break;
    }
    w.agent.body.velocity = n * terminal;
    for (int s = 0; s < 15; ++s) {
      aai::apply_agent_action(w, {1, 0});
      aai::step_physics(w);
      if (aai::dot(w.agent.center() - centre, n) > 0.0) {
        ++crossed;
        break;
      }
    }
  }
  if (crossed > 0) out.fail(fmt::format("{} of 10000 runs crossed the wall", crossed));

  auto push = [](const std::string& name) {
    auto w = physics_world({item("Agent", {{20, 0, 10}}, {}, {0}), item(name, {{20, 0, 11.5}}, {{2, 1, 2}}, {0})});
    const double z0 = w.objects.at(0).body.position.z;
    for (int i = 0; i < 50; ++i) {
      aai::apply_agent_action(w, {1, 0});
      aai::step_physics(w);
    }
    return w.objects.at(0).body.position.z - z0;
  };
  const double light = push("Cardbox1");
  const double heavy = push("Cardbox2");
  const double ratio = light > 0.0 ? heavy / light : 1.0;
  if (light <= 0.0 || ratio > 0.55) out.fail(fmt::format("push ratio {:.3f}", ratio));
  if (out.pass) {
    out.detail = fmt::format("fall error <= {:.4f} s, 0/10000 tunnelled at {:.1f} u/s, Cardbox2/Cardbox1 = {:.3f}",
                             worst_fall, terminal, ratio);
  }
  return out;
}

// 7
Outcome determinism() {
  Outcome out;
  const auto doc = aai::load_config(data("config3.yaml"));
  auto run = [&] {
    aai::Environment env(64);
    aai::Rng actions(31);
    std::vector<std::uint64_t> hashes;
    std::uint64_t seed = 12;
    for (int episode = 0; episode < 2; ++episode) {
      auto first = env.reset(doc, seed++);
      for (const auto& [i, o] : first) hashes.push_back(aai::frame_hash(o.frame));
      for (int s = 0; s < 120; ++s) {
        std::map<int, aai::Action> a;
        for (int arena : env.arenas()) a[arena] = {static_cast<int>(actions.uniform_int(0, 2)), static_cast<int>(actions.uniform_int(0, 2))};
        for (const auto& [i, o] : env.step(a)) hashes.push_back(aai::frame_hash(o.frame));
      }
    }
    return hashes;
  };
  const auto a = run();
  const auto b = run();
  if (a != b) out.fail("frame hashes differ");
  std::set<std::uint64_t> distinct(a.begin(), a.end());
  if (distinct.size() < 10) out.fail("script produced a static view");
  if (out.pass) out.detail = fmt::format("{} frames, {} distinct, identical across runs", a.size(), distinct.size());
  return out;
}

// 8
Outcome mazes() {
  Outcome out;
  int solved = 0;
  for (int i = 0; i < 1000; ++i) {
    const int n = 2 + i % 7;
    const auto seed = static_cast<std::uint64_t>(i);
    const auto grid = aai::gen_grid_maze(n, seed);
    std::size_t pieces = 0;
    for (const auto& it : grid.arenas.at(0).items) {
      if (it.name == "Wall") pieces += it.positions.size();
    }
    const std::size_t expected = static_cast<std::size_t>(2 * n * (n - 1) + (n * n - 1) + (n - 1) * (n - 1));
    if (pieces != expected) out.fail(fmt::format("{}x{} has {} walls, expected {}", n, n, pieces, expected));
    for (const auto* doc : {&grid}) solved += aai::solvability_check(*doc, seed) ? 1 : 0;
    solved += aai::solvability_check(aai::gen_scrambled_maze(seed), seed) ? 1 : 0;
    solved += aai::solvability_check(aai::gen_circular_maze(seed), seed) ? 1 : 0;
  }
  if (solved != 3000) out.fail(fmt::format("{} of 3000 solvable", solved));
  if (out.pass) out.detail = "1000 grid (2x2..8x8), 1000 scrambled, 1000 circular all solvable; wall counts match";
  return out;
}

// Reference: recompute the trailing-window sum from scratch at every episode.
std::vector<int> reference_advances(const std::vector<bool>& stream, int levels, double threshold, int window) {
  std::vector<int> adv;
  std::vector<bool> level_run;
  int level = 0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    level_run.push_back(stream[i]);
    if (level + 1 >= levels || static_cast<int>(level_run.size()) < window) continue;
    const int wins = static_cast<int>(std::count(level_run.end() - window, level_run.end(), true));
    if (100 * wins >= static_cast<int>(std::lround(threshold * 100)) * window) {
      adv.push_back(static_cast<int>(i));
      level_run.clear();
      ++level;
    }
  }
  return adv;
}

// 9
Outcome curriculum_trigger() {
  Outcome out;
  {
    aai::CurriculumState st(2, {0.85, 600});
    std::vector<bool> s(90, false);
    s.insert(s.end(), 510, true);
    int fired = -1;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (st.record(s[i]) && fired < 0) fired = static_cast<int>(i);
    }
    if (fired != 599) out.fail(fmt::format("510/600 fired at {}", fired));
  }
  {
    aai::CurriculumState st(2, {0.85, 600});
    bool fired = false;
    for (int i = 0; i < 91; ++i) fired |= st.record(false);
    for (int i = 0; i < 509; ++i) fired |= st.record(true);
    if (fired) out.fail("509/600 fired");
    if (!st.record(true)) out.fail("trailing window did not slide to 510/600");
  }
  aai::Rng rng(9);
  int streams = 0;
  for (double p : {0.80, 0.84, 0.85, 0.86, 0.9, 0.95}) {
    for (int k = 0; k < 5; ++k) {
      std::vector<bool> stream(4000);
      for (auto&& v : stream) v = rng.bernoulli(p);
      aai::CurriculumState st(4, {0.85, 600});
      std::vector<int> got;
      for (std::size_t i = 0; i < stream.size(); ++i) {
        if (st.record(stream[i])) got.push_back(static_cast<int>(i));
      }
      if (got != reference_advances(stream, 4, 0.85, 600)) out.fail(fmt::format("stream p={} differs", p));
      ++streams;
    }
  }
  if (out.pass) out.detail = fmt::format("510/600 fires at episode 600, 509/600 does not, {} random streams match", streams);
  return out;
}

// 10
Outcome harness_baselines() {
  Outcome out;
  aai::RunOptions opts;
  int episodes = 0, successes = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    for (const auto& e : aai::gen_sample_battery(seed)) {
      if (e.category != "basic-food" || e.difficulty != 1) continue;
      aai::GreedyAgent greedy;
      const auto stats = aai::run_episodes(greedy, e.doc, 5, seed, opts);
      episodes += stats.episodes;
      successes += static_cast<int>(std::lround(*stats.success_rate * stats.episodes));
    }
  }
  const double greedy_rate = static_cast<double>(successes) / episodes;
  if (greedy_rate < 0.95) out.fail(fmt::format("greedy {:.3f}", greedy_rate));

  const auto dir = std::filesystem::temp_directory_path() / "aai_acceptance_battery";
  std::filesystem::remove_all(dir);
  const auto manifest = aai::load_manifest(aai::write_battery(aai::gen_sample_battery(1), dir));
  aai::NullAgent null_agent;
  const auto report = aai::run_battery(manifest, null_agent, 1, opts);
  std::vector<std::string> cats;
  for (const auto& c : report.categories) cats.push_back(c.category);
  const std::vector<std::string> want(aai::kBatteryCategories.begin(), aai::kBatteryCategories.end());
  if (cats != want) out.fail("report categories differ from the ten");
  int null_passes = 0;
  for (const auto& e : report.entries) null_passes += e.passed ? 1 : 0;
  if (null_passes != 0 || report.overall.value_or(1.0) != 0.0) out.fail(fmt::format("null passed {}", null_passes));
  aai::NullAgent null2;
  const auto basic = aai::run_episodes(null2, aai::load_config(manifest.front().config), 20, 3, opts);
  if (*basic.success_rate != 0.0) out.fail("null succeeded on basic-food");
  std::filesystem::remove_all(dir);
  if (out.pass) {
    out.detail = fmt::format("greedy {}/{} = {:.3f} on basic-food d1, null 0/{} entries, {} categories", successes,
                             episodes, greedy_rate, report.entries.size(), cats.size());
  }
  return out;
}

const char* kProtocolConfig =
    "!ArenaConfig\narenas:\n  0: !Arena\n    t: 30\n    items:\n    - !Item\n      name: GoodGoal\n"
    "    - !Item\n      name: Wall\n  1: !Arena\n    t: 30\n    items:\n    - !Item\n      name: BadGoal\n";

// 11
Outcome protocol() {
  Outcome out;
  aai::Server server({});
  server.start();
  {
    auto a = aai::Client::tcp("127.0.0.1", server.port());
    auto b = aai::Client::tcp("127.0.0.1", server.port());
    a.hello(32, 99);
    b.hello(32, 99);
    a.configure(kProtocolConfig);
    b.configure(kProtocolConfig);
    std::vector<std::uint8_t> sa, sb;
    auto add = [](std::vector<std::uint8_t>& s, const aai::StepReply& r) {
      auto w = aai::encode_message(r.raw);
      s.insert(s.end(), w.begin(), w.end());
      for (const auto& e : r.episode_ends) {
        auto x = aai::encode_message(e);
        s.insert(s.end(), x.begin(), x.end());
      }
    };
    add(sa, a.reset());
    add(sb, b.reset());
    aai::Rng acts(4);
    for (int i = 0; i < 40; ++i) {
      const std::map<int, aai::Action> step{{0, {static_cast<int>(acts.uniform_int(0, 2)), 1}}, {1, {1, 2}}};
      add(sa, a.step(step));
      add(sb, b.step(step));
    }
    if (sa != sb) out.fail("same-seed sessions diverged");
    if (a.session() == b.session()) out.fail("sessions share an id");
    a.bye();
    b.bye();
  }
  {
    auto c = aai::Client::tcp("127.0.0.1", server.port());
    c.hello(8, 1);
    try {
      c.step({{0, {1, 0}}});
      out.fail("step before configure accepted");
    } catch (const aai::ProtocolError& e) {
      if (e.code() != aai::error_code::kNotConfigured) out.fail("pre-configure code " + e.code());
    }
    c.bye();
  }
  {
    aai::Socket raw = aai::connect_tcp("127.0.0.1", server.port());
    raw.send_all(aai::encode_message(aai::make_hello(8, 1)));
    const std::string junk = "{\"type\": \"step\", \"payload\": [";
    std::vector<std::uint8_t> frame{0, 0, 0, static_cast<std::uint8_t>(junk.size())};
    frame.insert(frame.end(), junk.begin(), junk.end());
    raw.send_all(frame);
    aai::TcpChannel ch(std::move(raw));
    const auto ack = ch.receive();
    const auto err = ch.receive();
    if (!ack || ack->type != aai::MessageType::kHelloAck) out.fail("no hello-ack");
    if (!err || err->type != aai::MessageType::kError || err->payload.value("code", "") != aai::error_code::kMalformedFrame) {
      out.fail("malformed frame not reported");
    }
    if (ch.receive()) out.fail("connection stayed open after malformed frame");
  }
  server.stop();

  aai::ObservationBundle o;
  o.frame = aai::black_frame(4);
  o.frame.pixels[1] = 9;
  const auto [world, report] = aai::build_world(arena_of({item("GoodGoal"), item("Wall")}), 1);
  const std::vector<aai::Message> all{aai::make_hello(84, 3, true), aai::make_configure(kProtocolConfig),
                                      aai::make_reset(5), aai::make_step({{0, {1, 2}}}),
                                      aai::make_observation(1, {{0, o}}), aai::make_episode_end(0, {}),
                                      aai::make_error(aai::error_code::kBadRequest, "x"), aai::make_bye(),
                                      aai::make_world_summary(0, world)};
  std::set<aai::MessageType> types;
  auto check_round_trip = [&](const aai::Message& m) {
    types.insert(m.type);
    for (auto enc : {aai::BlobEncoding::kBinary, aai::BlobEncoding::kBase64}) {
      if (!(aai::decode_message(aai::encode_message(m, enc)) == m)) out.fail(fmt::format("{} round trip", aai::to_string(m.type)));
    }
  };
  for (const auto& m : all) check_round_trip(m);
  aai::Session s("rt");
  check_round_trip(s.handle(aai::make_hello(8, 1)).at(0));
  check_round_trip(s.handle(aai::make_configure(kProtocolConfig)).at(0));
  if (types.size() != 11) out.fail(fmt::format("{} message types covered", types.size()));
  if (out.pass) out.detail = "isolated same-seed byte streams, not-configured and malformed-frame paths, 11 types round-trip";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"config-fidelity", config_fidelity},   {"step-penalty", step_penalty},
      {"reward-table", reward_table},         {"blackout-schedule", blackouts},
      {"spawn-safety", spawn_safety},         {"physics-sanity", physics_sanity},
      {"determinism", determinism},           {"maze-generators", mazes},
      {"curriculum-trigger", curriculum_trigger}, {"harness-baselines", harness_baselines},
      {"protocol", protocol},
  };
  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = checks[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    failures += o.pass ? 0 : 1;
    fmt::print("{} {:2} {:<20} {} ({:.1f} s)\n", o.pass ? "PASS" : "FAIL", i + 1, checks[i].first, o.detail,
               seconds_since(t0));
    std::fflush(stdout);
  }
  fmt::print("{} of {} criteria passed\n", checks.size() - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
