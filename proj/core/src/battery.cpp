#include "aai/battery.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "aai/config_io.hpp"
#include "aai/rng.hpp"
#include "aai/taskgen.hpp"

namespace aai {

bool is_battery_category(std::string_view name) { return category_rank(name) >= 0; }

int category_rank(std::string_view name) {
  const auto it = std::find(kBatteryCategories.begin(), kBatteryCategories.end(), name);
  return it == kBatteryCategories.end() ? -1 : static_cast<int>(it - kBatteryCategories.begin());
}

namespace {

constexpr Vec3 kAgentStart{20.0, 0.0, 4.0};
constexpr Vec3 kUnitSphere{1.0, 1.0, 1.0};

Vec3 ball(double d) { return {d, d, d}; }

ItemSpec item(std::string name) {
  ItemSpec s;
  s.name = std::move(name);
  return s;
}

ItemSpec one(std::string name, const Vec3& pos, const Vec3& size, double yaw = 0.0) {
  ItemSpec s = item(std::move(name));
  s.positions.push_back(pos);
  s.sizes.push_back(size);
  s.rotations.push_back(yaw);
  return s;
}

ItemSpec goal(std::string name, const Vec3& pos, double d) {
  ItemSpec s = item(std::move(name));
  s.positions.push_back(pos);
  s.sizes.push_back(ball(d));
  return s;
}

ItemSpec golds(const std::vector<Vec3>& where, double d) {
  ItemSpec s = item("GoodGoalMulti");
  for (const auto& p : where) {
    s.positions.push_back(p);
    s.sizes.push_back(ball(d));
  }
  return s;
}

ItemSpec agent_at(const Vec3& pos = kAgentStart, double yaw = 0.0) {
  ItemSpec s = item("Agent");
  s.positions.push_back(pos);
  s.rotations.push_back(yaw);
  return s;
}

ArenaConfigDoc arena(int t, std::vector<ItemSpec> items, std::vector<int> blackouts = {}) {
  ArenaSpec spec;
  spec.t = t;
  spec.blackouts = std::move(blackouts);
  spec.items = std::move(items);
  ArenaConfigDoc doc;
  doc.arenas.emplace(0, std::move(spec));
  return doc;
}

struct Builder {
  std::vector<BatteryEntry> out;
  void add(std::string_view category, int difficulty, ArenaConfigDoc doc, double threshold = 0.0) {
    out.push_back({std::string(category), fmt::format("{}-{}", category, difficulty), difficulty, std::move(doc), threshold});
  }
};

}  // namespace

std::vector<BatteryEntry> gen_sample_battery(std::uint64_t seed) {
  Rng rng(hash_seed(seed, 0x62617474));
  auto jitter = [&](double span) { return std::round(rng.uniform(-span, span) * 10.0) / 10.0; };
  Builder b;

  // basic-food
  b.add("basic-food", 1, arena(250, {goal("GoodGoal", {20.0 + jitter(1.0), 0.0, 12.0}, 2.0), agent_at()}));
  b.add("basic-food", 2, arena(500, {goal("GoodGoal", {kRandom, 0.0, kRandom}, 1.0), agent_at()}));
  {
    ItemSpec moving = item("GoodGoalMove");
    moving.positions.push_back({kRandom, 0.0, kRandom});
    moving.sizes.push_back(ball(1.5));
    ItemSpec gold = item("GoodGoalMulti");
    for (int i = 0; i < 3; ++i) {
      gold.positions.push_back({kRandom, 0.0, kRandom});
      gold.sizes.push_back(kUnitSphere);
    }
    b.add("basic-food", 3, arena(500, {gold, moving, agent_at()}));
  }

  // preferences: the threshold only admits the better choice
  b.add("preferences", 1,
        arena(250, {goal("GoodGoal", {14.0, 0.0, 18.0}, 3.0), goal("GoodGoal", {26.0, 0.0, 18.0}, 1.0), agent_at()}), 1.5);
  b.add("preferences", 2,
        arena(300, {goal("GoodGoal", {20.0, 0.0, 10.0}, 1.0), goal("GoodGoal", {20.0 + jitter(3.0), 0.0, 30.0}, 3.0),
                    agent_at()}),
        1.5);
  b.add("preferences", 3,
        arena(400, {golds({{12.0, 0.0, 12.0}, {12.0, 0.0, 16.0}}, 1.0), goal("GoodGoal", {30.0, 0.0, 30.0}, 4.0),
                    agent_at()}),
        3.0);

  // obstacles
  b.add("obstacles", 1,
        arena(500, {one("Wall", {20.0, 0.0, 14.0}, {12.0, 3.0, 1.0}), goal("GoodGoal", {20.0 + jitter(2.0), 0.0, 26.0}, 2.0),
                    agent_at()}));
  b.add("obstacles", 2,
        arena(500, {one("Wall", {20.0, 0.0, 28.0}, {8.0, 1.5, 8.0}), one("Ramp", {20.0, 0.0, 35.0}, {4.0, 1.5, 6.0}, 180.0),
                    goal("GoodGoal", {20.0, 1.5, 28.0}, 1.0), agent_at()}));
  b.add("obstacles", 3,
        arena(600, {one("CylinderTunnel", {20.0, 0.0, 20.0}, {4.0, 3.0, 8.0}),
                    one("Wall", {8.95, 0.0, 20.0}, {17.9, 3.0, 1.0}), one("Wall", {31.05, 0.0, 20.0}, {17.9, 3.0, 1.0}),
                    goal("GoodGoal", {20.0, 0.0, 32.0}, 2.0), agent_at()}));

  // avoidance
  b.add("avoidance", 1,
        arena(500, {one("DeathZone", {20.0, 0.0, 14.0}, {16.0, 0.0, 3.0}), goal("GoodGoal", {20.0, 0.0, 26.0}, 2.0),
                    agent_at()}));
  {
    ItemSpec bad = item("BadGoal");
    for (const Vec3& p : {Vec3{20.0, 0.0, 14.0}, Vec3{14.0, 0.0, 16.0}, Vec3{26.0, 0.0, 16.0}}) {
      bad.positions.push_back(p);
      bad.sizes.push_back(ball(1.5));
    }
    b.add("avoidance", 2, arena(500, {bad, goal("GoodGoal", {20.0 + jitter(2.0), 0.0, 28.0}, 2.0), agent_at()}));
  }
  b.add("avoidance", 3,
        arena(500, {one("HotZone", {20.0, 0.0, 24.0}, {12.0, 0.0, 12.0}), one("DeathZone", {20.0, 0.0, 12.0}, {6.0, 0.0, 2.0}),
                    goal("GoodGoal", {20.0, 0.0, 24.0}, 2.0), agent_at()}));

  // spatial-reasoning
  b.add("spatial-reasoning", 1,
        arena(600, {one("Wall", {20.0, 0.0, 19.0}, {10.0, 3.0, 1.0}), one("Wall", {15.5, 0.0, 24.0}, {1.0, 3.0, 9.0}),
                    one("Wall", {24.5, 0.0, 24.0}, {1.0, 3.0, 9.0}), goal("GoodGoal", {20.0, 0.0, 24.0}, 2.0), agent_at()}));
  b.add("spatial-reasoning", 2, gen_grid_maze(2, rng.next_u64()));
  b.add("spatial-reasoning", 3, gen_grid_maze(3, rng.next_u64()));

  // robustness
  {
    ItemSpec walls = item("Wall");
    for (const Vec3& p : {Vec3{10.0, 0.0, 16.0}, Vec3{30.0, 0.0, 16.0}, Vec3{14.0, 0.0, 28.0}, Vec3{26.0, 0.0, 28.0}}) {
      walls.positions.push_back(p);
      walls.sizes.push_back({2.0, 4.0, 2.0});
      walls.rotations.push_back(0.0);
      walls.colors.push_back({-1, -1, -1});
    }
    b.add("robustness", 1, arena(300, {walls, goal("GoodGoal", {20.0 + jitter(1.0), 0.0, 16.0}, 2.0), agent_at()}));
  }
  b.add("robustness", 2,
        arena(500, {one("WallTransparent", {20.0, 0.0, 14.0}, {12.0, 3.0, 1.0}), goal("GoodGoal", {20.0, 0.0, 26.0}, 2.0),
                    agent_at()}));
  {
    ItemSpec light = item("Cardbox1");
    ItemSpec heavy = item("Cardbox2");
    for (int i = 0; i < 6; ++i) light.sizes.push_back(kUnitSphere);
    for (int i = 0; i < 4; ++i) heavy.sizes.push_back({1.5, 1.5, 1.5});
    b.add("robustness", 3, arena(500, {goal("GoodGoal", {20.0, 0.0, 22.0}, 2.0), light, heavy, agent_at()}));
  }

  // internal-models
  b.add("internal-models", 1, arena(250, {goal("GoodGoal", {20.0, 0.0, 14.0}, 2.0), agent_at()}, {-20}));
  b.add("internal-models", 2,
        arena(400, {one("Wall", {20.0, 0.0, 14.0}, {12.0, 3.0, 1.0}), goal("GoodGoal", {20.0, 0.0, 26.0}, 2.0), agent_at()},
              {-5}));
  b.add("internal-models", 3, arena(400, {goal("GoodGoal", {32.0, 0.0, 22.0 + jitter(2.0)}, 2.0), agent_at()}, {3}));

  // object-permanence
  b.add("object-permanence", 1,
        arena(300, {one("Wall", {20.0, 0.0, 18.0}, {4.0, 2.0, 1.0}), goal("GoodGoal", {20.0, 0.0, 22.0}, 1.0), agent_at()}));
  b.add("object-permanence", 2,
        arena(400, {one("CylinderTunnel", {20.0 + jitter(1.5), 0.0, 24.0}, {3.0, 2.5, 6.0}, 90.0),
                    goal("GoodGoal", {20.0, 0.0, 24.0}, 1.0), agent_at()}));
  b.add("object-permanence", 3,
        arena(500, {one("Wall", {20.0, 0.0, 24.0}, {8.0, 3.0, 1.0}), goal("GoodGoal", {20.0, 0.0, 30.0}, 2.0), agent_at()},
              {8}));

  // numerosity: thresholds reward taking the larger group
  b.add("numerosity", 1,
        arena(400, {golds({{12.0, 0.0, 24.0}}, 1.0), golds({{28.0, 0.0, 22.0}, {28.0, 0.0, 25.0}, {28.0, 0.0, 28.0}}, 1.0),
                    agent_at()}),
        2.0);
  b.add("numerosity", 2,
        arena(500, {golds({{11.0, 0.0, 22.0}, {11.0, 0.0, 26.0}}, 1.0),
                    golds({{29.0, 0.0, 20.0}, {29.0, 0.0, 23.0}, {29.0, 0.0, 26.0}, {29.0, 0.0, 29.0}}, 1.0), agent_at()}),
        3.0);
  b.add("numerosity", 3,
        arena(600, {one("Wall", {20.0, 0.0, 26.0}, {1.0, 3.0, 20.0}),
                    golds({{12.0, 0.0, 20.0}, {12.0, 0.0, 26.0}, {12.0, 0.0, 32.0}}, 1.0),
                    golds({{28.0, 0.0, 18.0}, {28.0, 0.0, 22.0}, {28.0, 0.0, 26.0}, {28.0, 0.0, 30.0}, {28.0, 0.0, 34.0}}, 1.0),
                    agent_at()}),
        4.0);

  // causal-reasoning
  b.add("causal-reasoning", 1,
        arena(400, {one("Cardbox1", {20.0, 0.0, 12.0}, {3.0, 2.0, 2.0}), goal("GoodGoal", {24.0 + jitter(1.0), 0.0, 22.0}, 2.0),
                    agent_at()}));
  b.add("causal-reasoning", 2,
        arena(600, {one("Wall", {17.5, 0.0, 16.0}, {1.0, 3.0, 16.0}), one("Wall", {22.5, 0.0, 16.0}, {1.0, 3.0, 16.0}),
                    one("Cardbox1", {20.0, 0.0, 12.0}, {3.6, 1.5, 1.5}), goal("GoodGoal", {12.0, 0.0, 30.0}, 2.0), agent_at()}));
  b.add("causal-reasoning", 3,
        arena(600, {one("Wall", {17.5, 0.0, 16.0}, {1.0, 3.0, 16.0}), one("Wall", {22.5, 0.0, 16.0}, {1.0, 3.0, 16.0}),
                    one("Cardbox2", {20.0, 0.0, 12.0}, {3.6, 1.5, 3.0}), one("UObject", {28.0, 0.0, 30.0}, {4.0, 1.0, 6.0}, 180.0),
                    goal("GoodGoal", {28.0, 0.0, 30.0}, 1.5), agent_at()}));
  return std::move(b.out);
}

std::filesystem::path write_battery(const std::vector<BatteryEntry>& entries, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (const auto& e : entries) {
    const std::string file = e.name + ".yaml";
    save_config(e.doc, dir / file);
    manifest.push_back({{"category", e.category},
                        {"config", file},
                        {"threshold", e.threshold},
                        {"name", e.name},
                        {"difficulty", e.difficulty}});
  }
  const auto path = dir / "manifest.json";
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << manifest.dump(2) << '\n';
  return path;
}

std::vector<ManifestEntry> load_manifest(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open manifest " + path.string());
  const nlohmann::json j = nlohmann::json::parse(f);
  if (!j.is_array()) throw std::runtime_error("manifest must be a JSON list");
  std::vector<ManifestEntry> out;
  for (const auto& e : j) {
    ManifestEntry m;
    m.category = e.at("category").get<std::string>();
    if (!is_battery_category(m.category)) throw std::runtime_error("unknown battery category '" + m.category + "'");
    m.config = path.parent_path() / e.at("config").get<std::string>();
    m.threshold = e.value("threshold", 0.0);
    m.name = e.value("name", m.config.stem().string());
    m.difficulty = e.value("difficulty", 0);
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace aai
