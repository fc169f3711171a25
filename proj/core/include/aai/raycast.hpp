#pragma once

#include <optional>

#include "aai/world.hpp"

namespace aai {

struct WorldHit {
  enum class Target { kObject, kGround, kFence, kAgent };

  Target target = Target::kGround;
  int object_id = -1;  // objects only; fence index for fences
  double distance = 0.0;
  Vec3 normal;
};

struct RaycastOptions {
  double t_min = 1e-9;
  double t_max = 1e9;
  bool include_agent = false;
  bool skip_transparent = false;
};

/// Nearest entry hit along origin + t * direction with t in (t_min, t_max].
/// Zones are ground markings and are never hit.
std::optional<WorldHit> raycast(const WorldState& world, const Vec3& origin, const Vec3& direction,
                                const RaycastOptions& options = {});

/// Entry distance of a ray into a sphere; nullopt when the origin is inside.
std::optional<RayHit> ray_sphere(const Vec3& origin, const Vec3& dir, const Vec3& center, double radius, double t_min,
                                 double t_max);

/// Entry hit into the solid tunnel shell: half elliptic cylinder of outer
/// semi-axes (size.x / 2, size.y) minus the inner one shrunk by
/// kArchThickness, extruded along the local z extent.
std::optional<RayHit> ray_arch(const Vec3& origin, const Vec3& dir, const Vec3& base, double yaw_degrees,
                               const Vec3& size, double t_min, double t_max);

/// Point membership for the same solid shell (local test helper for oracles).
bool arch_contains(const Vec3& p, const Vec3& base, double yaw_degrees, const Vec3& size);

}  // namespace aai
