#include "aai/catalog.hpp"

#include <array>
#include <limits>

namespace aai {
namespace {

constexpr Rgb kGreen{0, 255, 0};
constexpr Rgb kGold{255, 200, 0};
constexpr Rgb kRed{255, 0, 0};
constexpr Rgb kOrange{255, 150, 0};
constexpr Rgb kDeathRed{200, 0, 0};
constexpr Rgb kBlue{0, 0, 255};
constexpr Rgb kCardboard{181, 137, 89};
constexpr Rgb kCardboardDark{139, 101, 62};
constexpr Rgb kStick{196, 164, 112};
constexpr Rgb kGlass{200, 225, 255};

AxisRange range(double lo, double hi) { return {lo, hi, false}; }
AxisRange any_value() { return {0.0, 0.0, true}; }

CatalogEntry sphere(std::string name, Rgb color, RewardRule rule, bool terminates, bool moving) {
  CatalogEntry e;
  e.name = std::move(name);
  e.object_class = ObjectClass::kRewardSphere;
  e.mass = 1.0;
  e.size_x = e.size_y = e.size_z = range(1.0, 5.0);
  e.fixed_color = color;
  e.reward = rule;
  e.terminates = terminates;
  e.shape = ColliderShape::kSphere;
  e.moving = moving;
  return e;
}

CatalogEntry zone(std::string name, Rgb color, RewardRule rule, bool terminates) {
  CatalogEntry e;
  e.name = std::move(name);
  e.object_class = ObjectClass::kZone;
  e.size_x = e.size_z = range(1.0, 40.0);
  e.size_y = any_value();
  e.fixed_color = color;
  e.reward = rule;
  e.terminates = terminates;
  e.shape = ColliderShape::kGroundQuad;
  return e;
}

CatalogEntry movable(std::string name, double mass, AxisRange sx, AxisRange sy, AxisRange sz, Rgb color,
                     ColliderShape shape, bool mirrored = false) {
  CatalogEntry e;
  e.name = std::move(name);
  e.object_class = ObjectClass::kMovable;
  e.mass = mass;
  e.size_x = sx;
  e.size_y = sy;
  e.size_z = sz;
  e.fixed_color = color;
  e.shape = shape;
  e.mirrored = mirrored;
  return e;
}

CatalogEntry immovable(std::string name, AxisRange sx, AxisRange sy, AxisRange sz, ColliderShape shape,
                       bool transparent) {
  CatalogEntry e;
  e.name = std::move(name);
  e.object_class = ObjectClass::kImmovable;
  e.size_x = sx;
  e.size_y = sy;
  e.size_z = sz;
  e.shape = shape;
  e.transparent = transparent;
  if (transparent) e.fixed_color = kGlass;
  return e;
}

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> c;
  c.push_back(sphere("GoodGoal", kGreen, RewardRule::kGood, true, false));
  c.push_back(sphere("BadGoal", kRed, RewardRule::kBad, true, false));
  c.push_back(sphere("GoodGoalMulti", kGold, RewardRule::kMulti, false, false));
  c.push_back(sphere("GoodGoalMove", kGreen, RewardRule::kGood, true, true));
  c.push_back(sphere("BadGoalMove", kRed, RewardRule::kBad, true, true));
  c.push_back(sphere("GoodGoalMultiMove", kGold, RewardRule::kMulti, false, true));

  c.push_back(zone("DeathZone", kDeathRed, RewardRule::kDeath, true));
  c.push_back(zone("HotZone", kOrange, RewardRule::kHot, false));

  const auto box_axis = range(0.5, 10.0);
  c.push_back(movable("Cardbox1", 1.0, box_axis, box_axis, box_axis, kCardboard, ColliderShape::kBox));
  c.push_back(movable("Cardbox2", 2.0, box_axis, box_axis, box_axis, kCardboardDark, ColliderShape::kBox));
  c.push_back(movable("LObject", 3.0, range(1, 5), range(0.3, 2), range(3, 20), kStick, ColliderShape::kCompoundL));
  c.push_back(movable("LObject2", 3.0, range(1, 5), range(0.3, 2), range(3, 20), kStick, ColliderShape::kCompoundL,
                      true));
  c.push_back(movable("UObject", 3.0, range(1, 5), range(0.3, 2), range(3, 20), kStick, ColliderShape::kCompoundU));

  c.push_back(immovable("Wall", range(0.1, 40), range(0.1, 10), range(0.1, 40), ColliderShape::kBox, false));
  c.push_back(immovable("WallTransparent", range(0.1, 40), range(0.1, 10), range(0.1, 40), ColliderShape::kBox, true));
  c.push_back(immovable("CylinderTunnel", range(2.5, 10), range(2.5, 10), range(2.5, 10), ColliderShape::kArch, false));
  c.push_back(immovable("CylinderTunnelTransparent", range(2.5, 10), range(2.5, 10), range(2.5, 10),
                        ColliderShape::kArch, true));
  c.push_back(immovable("Ramp", range(0.5, 40), range(0.1, 10), range(0.5, 40), ColliderShape::kWedge, false));

  CatalogEntry agent;
  agent.name = "Agent";
  agent.object_class = ObjectClass::kAgent;
  agent.mass = 1.0;
  agent.size_x = agent.size_y = agent.size_z = any_value();
  agent.fixed_color = kBlue;
  agent.shape = ColliderShape::kSphere;
  c.push_back(agent);
  return c;
}

const std::vector<CatalogEntry>& catalog_storage() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

nlohmann::json axis_json(const AxisRange& r) {
  if (r.free) return nullptr;
  return nlohmann::json::array({r.lo, r.hi});
}

}  // namespace

std::span<const CatalogEntry> catalog() { return catalog_storage(); }

const CatalogEntry* find_catalog_entry(std::string_view name) noexcept {
  for (const auto& e : catalog_storage()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

const CatalogEntry& catalog_lookup(std::string_view name) {
  if (const auto* e = find_catalog_entry(name)) return *e;
  throw UnknownObjectError(std::string(name));
}

nlohmann::json catalog_json() {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& e : catalog_storage()) {
    nlohmann::json j;
    j["name"] = e.name;
    j["class"] = to_string(e.object_class);
    j["mass"] = e.mass;
    j["size"] = {{"x", axis_json(e.size_x)}, {"y", axis_json(e.size_y)}, {"z", axis_json(e.size_z)}};
    if (e.fixed_color) {
      j["color"] = {e.fixed_color->r, e.fixed_color->g, e.fixed_color->b};
    } else {
      j["color"] = nullptr;
    }
    j["reward"] = to_string(e.reward);
    j["terminates"] = e.terminates;
    j["collider"] = to_string(e.shape);
    j["transparent"] = e.transparent;
    j["moving"] = e.moving;
    out.push_back(std::move(j));
  }
  return out;
}

std::string_view to_string(ObjectClass c) {
  switch (c) {
    case ObjectClass::kRewardSphere: return "reward-sphere";
    case ObjectClass::kZone: return "zone";
    case ObjectClass::kMovable: return "movable";
    case ObjectClass::kImmovable: return "immovable";
    case ObjectClass::kAgent: return "agent";
  }
  return "?";
}

std::string_view to_string(RewardRule r) {
  switch (r) {
    case RewardRule::kNone: return "none";
    case RewardRule::kGood: return "good";
    case RewardRule::kBad: return "bad";
    case RewardRule::kMulti: return "multi";
    case RewardRule::kDeath: return "death";
    case RewardRule::kHot: return "hot";
  }
  return "?";
}

std::string_view to_string(ColliderShape s) {
  switch (s) {
    case ColliderShape::kSphere: return "sphere";
    case ColliderShape::kBox: return "box";
    case ColliderShape::kWedge: return "wedge";
    case ColliderShape::kArch: return "arch";
    case ColliderShape::kGroundQuad: return "ground-quad";
    case ColliderShape::kCompoundL: return "compound-L";
    case ColliderShape::kCompoundU: return "compound-U";
  }
  return "?";
}

}  // namespace aai
