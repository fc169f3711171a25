#include "aai/spawn.hpp"

#include <algorithm>
#include <cmath>

namespace aai {

std::string_view to_string(SpawnStatus s) {
  switch (s) {
    case SpawnStatus::kPlaced: return "placed";
    case SpawnStatus::kSkippedAfterRetries: return "skipped-after-retries";
    case SpawnStatus::kSkippedFixedPose: return "skipped-collision-fixed-pose";
    case SpawnStatus::kSkippedExtraAgent: return "skipped-extra-agent";
  }
  return "?";
}

int SpawnReport::attempted(std::string_view name) const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [&](const auto& r) { return r.name == name; }));
}

int SpawnReport::placed(std::string_view name) const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [&](const auto& r) {
    return r.name == name && r.status == SpawnStatus::kPlaced;
  }));
}

nlohmann::json SpawnReport::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : records) {
    out.push_back({{"item", r.item},
                   {"instance", r.instance},
                   {"name", r.name},
                   {"status", to_string(r.status)},
                   {"attempts", r.attempts}});
  }
  return out;
}

int instance_count(const ItemSpec& item) {
  const std::size_t n = std::max({item.positions.size(), item.rotations.size(), item.colors.size(), item.sizes.size()});
  return std::max<int>(1, static_cast<int>(n));
}

namespace {

constexpr Vec3 kAllRandom{kRandom, kRandom, kRandom};
constexpr Rgb kRandomColor{-1, -1, -1};

double draw_axis(double value, const AxisRange& range, double free_default, Rng& rng, bool& randomized) {
  if (range.free) return free_default;
  if (!is_random(value)) return value;
  randomized = true;
  return rng.uniform(range.lo, range.hi);
}

double place_axis(double unit, double half_extent) {
  const double lo = half_extent;
  const double hi = kArenaSize - half_extent;
  if (hi <= lo) return kArenaSize / 2.0;
  return lo + (hi - lo) * unit;
}

}  // namespace

Candidate materialize_instance(const ItemSpec& item, int index, Rng& rng) {
  const CatalogEntry& entry = catalog_lookup(item.name);
  const auto at = static_cast<std::size_t>(index);
  Candidate c;
  c.entry = &entry;

  const Vec3 pos = at < item.positions.size() ? item.positions[at] : kAllRandom;
  const double rot = at < item.rotations.size() ? item.rotations[at] : kRandom;
  const Vec3 size = at < item.sizes.size() ? item.sizes[at] : kAllRandom;
  const Rgb color = at < item.colors.size() ? item.colors[at] : kRandomColor;

  bool random_x = is_random(pos.x);
  bool random_z = is_random(pos.z);
  const double ux = random_x ? rng.uniform() : 0.0;
  const double uz = random_z ? rng.uniform() : 0.0;

  if (is_random(rot)) {
    c.yaw = rng.uniform(0.0, 360.0);
    c.randomized_geometry = true;
  } else {
    c.yaw = rot;
  }

  bool random_size = false;
  const double free_default = entry.object_class == ObjectClass::kAgent ? 2.0 * kAgentRadius : 0.0;
  c.size.x = draw_axis(size.x, entry.size_x, free_default, rng, random_size);
  if (entry.is_sphere()) {
    c.size = {c.size.x, c.size.x, c.size.x};
  } else {
    c.size.y = draw_axis(size.y, entry.size_y, free_default, rng, random_size);
    c.size.z = draw_axis(size.z, entry.size_z, free_default, rng, random_size);
  }
  c.randomized_geometry = c.randomized_geometry || random_size || random_x || random_z;

  if (entry.fixed_color) {
    c.color = *entry.fixed_color;
  } else {
    auto channel = [&](int v) { return v == -1 ? static_cast<int>(rng.uniform_int(0, 255)) : v; };
    c.color.r = channel(color.r);
    c.color.g = channel(color.g);
    c.color.b = channel(color.b);
  }

  const Vec3 half = entry.is_sphere() ? Vec3{c.size.x / 2.0, 0.0, c.size.x / 2.0} : footprint_half_extents(c.yaw, c.size);
  c.position.x = random_x ? place_axis(ux, half.x) : pos.x;
  c.position.z = random_z ? place_axis(uz, half.z) : pos.z;
  c.position.y = is_random(pos.y) ? 0.0 : pos.y;
  return c;
}

namespace {

PlacedObject make_placed(const Candidate& c, int id, int item_index, const PhysicsParams& params) {
  PlacedObject o;
  o.id = id;
  o.entry = c.entry;
  o.size = c.size;
  o.color = c.color;
  o.item_index = item_index;
  o.collider = make_object_collider(*c.entry, c.position, c.yaw, c.size);
  o.body.position = c.position;
  o.body.yaw = c.yaw;
  o.body.mass = c.entry->mass;
  o.body.kinematic = !c.entry->is_dynamic();
  if (c.entry->moving) {
    o.travel = heading_vector(c.yaw);
    o.body.velocity = o.travel * params.goal_speed;
  }
  return o;
}

bool collides(const WorldState& world, bool agent_placed, const Candidate& c, const Collider& collider) {
  if (c.entry->is_zone()) {
    const Vec3 half = footprint_half_extents(0.0, c.size);
    if (agent_placed) {
      const Vec3 a = world.agent.center();
      if (disc_overlaps_rect(a.x, a.z, kAgentRadius, c.position, c.yaw, half.x, half.z)) return true;
    }
    for (const auto& o : world.objects) {
      if (o.entry->is_zone() && overlap_test(o.collider, collider)) return true;
    }
    return false;
  }
  if (agent_placed && overlap_test(world.agent.collider(), collider)) return true;
  for (const auto& o : world.objects) {
    if (!o.entry->is_zone() && overlap_test(o.collider, collider)) return true;
  }
  return false;
}

int next_object_id(const WorldState& world) {
  int id = 0;
  for (const auto& o : world.objects) id = std::max(id, o.id + 1);
  return id;
}

}  // namespace

SpawnAttempt try_spawn(WorldState& world, const ItemSpec& item, int index, Rng& rng) {
  SpawnAttempt result;
  for (int attempt = 1; attempt <= kMaxSpawnAttempts; ++attempt) {
    const Candidate c = materialize_instance(item, index, rng);
    result.attempts = attempt;
    const Collider collider = make_object_collider(*c.entry, c.position, c.yaw, c.size);
    if (!collides(world, true, c, collider)) {
      PlacedObject o = make_placed(c, next_object_id(world), -1, world.params);
      result.status = SpawnStatus::kPlaced;
      result.object_id = o.id;
      world.objects.push_back(std::move(o));
      return result;
    }
    if (!c.randomized_geometry) {
      result.status = SpawnStatus::kSkippedFixedPose;
      return result;
    }
  }
  result.status = SpawnStatus::kSkippedAfterRetries;
  return result;
}

std::uint64_t arena_seed(std::uint64_t global_seed, int arena_index) {
  return hash_seed(global_seed, static_cast<std::uint64_t>(arena_index));
}

std::pair<WorldState, SpawnReport> build_world(const ArenaSpec& spec, std::uint64_t seed,
                                               const PhysicsParams& params) {
  WorldState world;
  SpawnReport report;
  world.params = params;
  world.time_limit = spec.t;
  world.blackouts = spec.blackouts;
  world.fences = make_perimeter();
  world.rng = Rng(seed);

  int agent_item = -1;
  for (std::size_t i = 0; i < spec.items.size(); ++i) {
    if (spec.items[i].name == "Agent") {
      agent_item = static_cast<int>(i);
      break;
    }
  }

  ItemSpec fallback_agent;
  fallback_agent.name = "Agent";
  const ItemSpec& agent_spec = agent_item >= 0 ? spec.items[static_cast<std::size_t>(agent_item)] : fallback_agent;
  const Candidate a = materialize_instance(agent_spec, 0, world.rng);
  const double r = kAgentRadius;
  if (a.position.x - r < 0.0 || a.position.x + r > kArenaSize || a.position.z - r < 0.0 ||
      a.position.z + r > kArenaSize || a.position.y < 0.0) {
    throw AgentPlacementError("agent pose lies outside the arena");
  }
  world.agent.body.position = a.position;
  world.agent.body.yaw = std::fmod(a.yaw, 360.0);
  world.agent.body.mass = kAgentMass;
  world.agent.body.kinematic = false;
  if (agent_item >= 0) report.records.push_back({agent_item, 0, "Agent", SpawnStatus::kPlaced, 1, -2});

  for (std::size_t i = 0; i < spec.items.size(); ++i) {
    const ItemSpec& item = spec.items[i];
    const int n = instance_count(item);
    for (int k = 0; k < n; ++k) {
      if (item.name == "Agent") {
        if (static_cast<int>(i) == agent_item && k == 0) continue;
        report.records.push_back({static_cast<int>(i), k, item.name, SpawnStatus::kSkippedExtraAgent, 0, -1});
        continue;
      }
      const SpawnAttempt s = try_spawn(world, item, k, world.rng);
      if (s.object_id >= 0) world.find(s.object_id)->item_index = static_cast<int>(i);
      report.records.push_back({static_cast<int>(i), k, item.name, s.status, s.attempts, s.object_id});
    }
  }
  return {std::move(world), std::move(report)};
}

}  // namespace aai
