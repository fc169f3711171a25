#pragma once

#include <optional>
#include <vector>

#include "aai/catalog.hpp"
#include "aai/geometry.hpp"

namespace aai {

/// Shell thickness of the tunnel arch.
inline constexpr double kArchThickness = 0.25;
/// Segments used for the collision approximation of the arch.
inline constexpr int kArchSegments = 12;
/// Thickness of the arms of the L and U objects.
inline constexpr double kStickArm = 0.5;
/// Slab depth used for ground decals, below y = 0.
inline constexpr double kZoneDepth = 0.01;

/// Either a sphere or a union of convex hulls.
struct Collider {
  enum class Kind { kSphere, kHulls };

  Kind kind = Kind::kHulls;
  Vec3 center;  // sphere center
  double radius = 0.0;
  std::vector<ConvexHull> parts;
  Aabb bounds;

  static Collider sphere(const Vec3& center, double radius);
  static Collider hulls(std::vector<ConvexHull> parts);

  void translate(const Vec3& d);
};

/// Collider of a catalog object whose bottom-center is at `base`.
Collider make_object_collider(const CatalogEntry& entry, const Vec3& base, double yaw_degrees, const Vec3& size);

/// Horizontal half-extents of the object's footprint after rotation.
Vec3 footprint_half_extents(double yaw_degrees, const Vec3& size);

/// True iff the interiors intersect; touching boundaries do not overlap.
bool overlap_test(const Collider& a, const Collider& b);

/// Contact between a sphere and a collider, when they intersect or touch
/// within `slop`. Normal points from the collider towards the sphere.
struct SphereContact {
  Vec3 normal;
  double depth = 0.0;  // positive when penetrating
};
std::optional<SphereContact> sphere_contact(const Vec3& center, double radius, const Collider& c, double slop = 0.0);

/// Deepest penetration between two hull colliders (normal from b to a).
std::optional<Penetration> collider_penetration(const Collider& a, const Collider& b);

/// 2D footprint test between an upright disc and a yawed rectangle.
bool disc_overlaps_rect(double cx, double cz, double radius, const Vec3& rect_center, double yaw_degrees,
                        double half_x, double half_z);

/// True when (x, z) lies inside a yawed rectangle footprint.
bool point_in_rect(double x, double z, const Vec3& rect_center, double yaw_degrees, double half_x, double half_z);

}  // namespace aai
