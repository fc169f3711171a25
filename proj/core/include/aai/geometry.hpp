#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "aai/types.hpp"

namespace aai {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }

/// Contact tolerance: separations at or below this count as touching.
inline constexpr double kContactEpsilon = 1e-9;

/// Column-major 3x3 rotation.
struct Mat3 {
  Vec3 c0{1, 0, 0};
  Vec3 c1{0, 1, 0};
  Vec3 c2{0, 0, 1};

  Vec3 operator*(const Vec3& v) const { return c0 * v.x + c1 * v.y + c2 * v.z; }
  Mat3 operator*(const Mat3& o) const { return {*this * o.c0, *this * o.c1, *this * o.c2}; }
  /// Inverse of a rotation.
  Vec3 transpose_mul(const Vec3& v) const { return {dot(c0, v), dot(c1, v), dot(c2, v)}; }
};

/// Rotation about +y by `degrees`, clockwise seen from above: local +z
/// (forward) turns towards +x (right).
Mat3 yaw_rotation(double degrees);

/// Rotation about local +z by `radians` (x towards y).
Mat3 roll_rotation(double radians);

/// Unit heading on the ground plane for a yaw in degrees.
Vec3 heading_vector(double yaw_degrees);

struct Aabb {
  Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
  Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          -std::numeric_limits<double>::infinity()};

  void expand(const Vec3& p);
  void merge(const Aabb& o);
  bool overlaps(const Aabb& o, double margin = 0.0) const;
  void translate(const Vec3& d) {
    lo += d;
    hi += d;
  }
  /// Slab test; on hit returns the entry distance (0 if the origin is inside).
  std::optional<double> ray_entry(const Vec3& origin, const Vec3& dir, double t_max) const;
};

struct RayHit {
  double distance = 0.0;
  Vec3 normal;
};

/// Convex polyhedron in world coordinates. Face normals point outwards and
/// face vertex loops are counter-clockwise seen from outside.
class ConvexHull {
 public:
  struct Face {
    Vec3 normal;
    double offset = 0.0;  // normal . p == offset on the face plane
    std::vector<int> loop;
  };

  ConvexHull() = default;

  /// Oriented box from its center, rotation and half extents.
  static ConvexHull box(const Vec3& center, const Mat3& rotation, const Vec3& half_extents);

  /// Ramp: footprint [-x/2,x/2] x [-z/2,z/2] around `base` (bottom center),
  /// rising linearly from height 0 at local -z to `size.y` at local +z.
  static ConvexHull wedge(const Vec3& base, const Mat3& rotation, const Vec3& size);

  const std::vector<Vec3>& vertices() const { return vertices_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<Vec3>& edge_directions() const { return edge_dirs_; }
  const Aabb& bounds() const { return bounds_; }
  Vec3 centroid() const;

  void translate(const Vec3& d);

  /// Largest face-plane distance; <= 0 iff the point is inside or on the hull.
  double plane_distance(const Vec3& p) const;

  /// Exact signed Euclidean distance (negative inside). Fills the closest
  /// boundary point and the outward normal pointing towards `p`.
  double signed_distance(const Vec3& p, Vec3* closest = nullptr, Vec3* normal = nullptr) const;

  /// Projection interval on an axis.
  void project(const Vec3& axis, double& lo, double& hi) const;

  /// Entry hit for a ray starting outside; nullopt when the ray starts inside.
  std::optional<RayHit> ray_intersect(const Vec3& origin, const Vec3& dir, double t_min, double t_max) const;

 private:
  void finalize();

  std::vector<Vec3> vertices_;
  std::vector<Face> faces_;
  std::vector<Vec3> edge_dirs_;
  Aabb bounds_;
};

/// Separating-axis result for two hulls.
struct Penetration {
  Vec3 normal;  // unit, pointing from b towards a
  double depth = 0.0;
};

/// Strict-overlap test. Returns the minimum translation when the interiors
/// intersect by more than kContactEpsilon, nullopt when separated or touching.
std::optional<Penetration> hull_penetration(const ConvexHull& a, const ConvexHull& b);

}  // namespace aai
