#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "aai/types.hpp"

namespace aai {

enum class ObjectClass { kRewardSphere, kZone, kMovable, kImmovable, kAgent };

enum class RewardRule {
  kNone,
  kGood,   // +d, terminates
  kBad,    // -d, terminates
  kMulti,  // +d, terminates only when it is the last gold and no green remains
  kDeath,  // -1, terminates
  kHot,    // per-step penalty, never terminates
};

enum class ColliderShape { kSphere, kBox, kWedge, kArch, kGroundQuad, kCompoundL, kCompoundU };

/// Legal values along one size axis. `free` axes accept any value and are
/// ignored (zone height, agent size).
struct AxisRange {
  double lo = 0.0;
  double hi = 0.0;
  bool free = false;

  bool contains(double v) const { return free || (v >= lo && v <= hi); }
};

struct CatalogEntry {
  std::string name;
  ObjectClass object_class = ObjectClass::kImmovable;
  double mass = 0.0;  // kg; 0 for kinematic objects
  AxisRange size_x;
  AxisRange size_y;
  AxisRange size_z;
  std::optional<Rgb> fixed_color;
  RewardRule reward = RewardRule::kNone;
  bool terminates = false;
  ColliderShape shape = ColliderShape::kBox;
  bool transparent = false;
  bool moving = false;    // *Move variants travel along their spawn heading
  bool mirrored = false;  // LObject2

  bool is_sphere() const { return shape == ColliderShape::kSphere; }
  bool is_zone() const { return object_class == ObjectClass::kZone; }
  bool is_dynamic() const {
    return object_class == ObjectClass::kMovable || object_class == ObjectClass::kRewardSphere;
  }
};

class UnknownObjectError : public std::runtime_error {
 public:
  explicit UnknownObjectError(std::string name)
      : std::runtime_error("unknown object name '" + name + "'"), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

/// Every object the arena understands, in a stable order.
std::span<const CatalogEntry> catalog();

/// nullptr when `name` is not in the catalog.
const CatalogEntry* find_catalog_entry(std::string_view name) noexcept;

/// Throws UnknownObjectError when `name` is not in the catalog.
const CatalogEntry& catalog_lookup(std::string_view name);

/// Reference export of the catalog (ranges, masses, colors).
nlohmann::json catalog_json();

std::string_view to_string(ObjectClass c);
std::string_view to_string(RewardRule r);
std::string_view to_string(ColliderShape s);

}  // namespace aai
