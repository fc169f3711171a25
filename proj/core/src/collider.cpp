#include "aai/collider.hpp"

#include <algorithm>
#include <cmath>

namespace aai {

Collider Collider::sphere(const Vec3& center, double radius) {
  Collider c;
  c.kind = Kind::kSphere;
  c.center = center;
  c.radius = radius;
  c.bounds.expand(center - Vec3{radius, radius, radius});
  c.bounds.expand(center + Vec3{radius, radius, radius});
  return c;
}

Collider Collider::hulls(std::vector<ConvexHull> parts) {
  Collider c;
  c.kind = Kind::kHulls;
  c.parts = std::move(parts);
  for (const auto& p : c.parts) c.bounds.merge(p.bounds());
  return c;
}

void Collider::translate(const Vec3& d) {
  center += d;
  for (auto& p : parts) p.translate(d);
  bounds.translate(d);
}

namespace {

ConvexHull local_box(const Vec3& base, const Mat3& yaw, double x0, double x1, double y0, double y1, double z0,
                     double z1) {
  const Vec3 local_center{(x0 + x1) / 2.0, (y0 + y1) / 2.0, (z0 + z1) / 2.0};
  const Vec3 half{(x1 - x0) / 2.0, (y1 - y0) / 2.0, (z1 - z0) / 2.0};
  return ConvexHull::box(base + yaw * local_center, yaw, half);
}

std::vector<ConvexHull> arch_segments(const Vec3& base, const Mat3& yaw, const Vec3& size) {
  std::vector<ConvexHull> parts;
  const double a = size.x / 2.0 - kArchThickness / 2.0;
  const double b = size.y - kArchThickness / 2.0;
  for (int k = 0; k < kArchSegments; ++k) {
    const double t0 = kPi * k / kArchSegments;
    const double t1 = kPi * (k + 1) / kArchSegments;
    const Vec3 p0{a * std::cos(t0), b * std::sin(t0), 0.0};
    const Vec3 p1{a * std::cos(t1), b * std::sin(t1), 0.0};
    const Vec3 mid = (p0 + p1) * 0.5;
    const double len = length(p1 - p0) + kArchThickness * 0.5;
    const double roll = std::atan2(p1.y - p0.y, p1.x - p0.x);
    const Mat3 rot = yaw * roll_rotation(roll);
    parts.push_back(ConvexHull::box(base + yaw * mid, rot, {len / 2.0, kArchThickness / 2.0, size.z / 2.0}));
  }
  return parts;
}

}  // namespace

Collider make_object_collider(const CatalogEntry& entry, const Vec3& base, double yaw_degrees, const Vec3& size) {
  const Mat3 yaw = yaw_rotation(yaw_degrees);
  const double hx = size.x / 2.0;
  const double hz = size.z / 2.0;
  switch (entry.shape) {
    case ColliderShape::kSphere: {
      const double r = hx;
      return Collider::sphere(base + Vec3{0.0, r, 0.0}, r);
    }
    case ColliderShape::kBox:
      return Collider::hulls({local_box(base, yaw, -hx, hx, 0.0, size.y, -hz, hz)});
    case ColliderShape::kGroundQuad:
      return Collider::hulls({local_box(base, yaw, -hx, hx, -kZoneDepth, 0.0, -hz, hz)});
    case ColliderShape::kWedge:
      return Collider::hulls({ConvexHull::wedge(base, yaw, size)});
    case ColliderShape::kArch:
      return Collider::hulls(arch_segments(base, yaw, size));
    case ColliderShape::kCompoundL: {
      const double s = std::min(kStickArm, hx);
      std::vector<ConvexHull> parts;
      if (!entry.mirrored) {
        parts.push_back(local_box(base, yaw, -hx, -hx + s, 0.0, size.y, -hz, hz));
        if (size.x - s > 1e-9) parts.push_back(local_box(base, yaw, -hx + s, hx, 0.0, size.y, -hz, -hz + s));
      } else {
        parts.push_back(local_box(base, yaw, hx - s, hx, 0.0, size.y, -hz, hz));
        if (size.x - s > 1e-9) parts.push_back(local_box(base, yaw, -hx, hx - s, 0.0, size.y, -hz, -hz + s));
      }
      return Collider::hulls(std::move(parts));
    }
    case ColliderShape::kCompoundU: {
      const double s = std::min(kStickArm, hx);
      std::vector<ConvexHull> parts;
      parts.push_back(local_box(base, yaw, -hx, -hx + s, 0.0, size.y, -hz, hz));
      parts.push_back(local_box(base, yaw, hx - s, hx, 0.0, size.y, -hz, hz));
      if (size.x - 2.0 * s > 1e-9) parts.push_back(local_box(base, yaw, -hx + s, hx - s, 0.0, size.y, -hz, -hz + s));
      return Collider::hulls(std::move(parts));
    }
  }
  return {};
}

Vec3 footprint_half_extents(double yaw_degrees, const Vec3& size) {
  const double r = deg_to_rad(yaw_degrees);
  const double c = std::abs(std::cos(r));
  const double s = std::abs(std::sin(r));
  return {c * size.x / 2.0 + s * size.z / 2.0, size.y / 2.0, s * size.x / 2.0 + c * size.z / 2.0};
}

bool overlap_test(const Collider& a, const Collider& b) {
  if (!a.bounds.overlaps(b.bounds)) return false;
  if (a.kind == Collider::Kind::kSphere && b.kind == Collider::Kind::kSphere) {
    return length(a.center - b.center) < a.radius + b.radius - kContactEpsilon;
  }
  if (a.kind == Collider::Kind::kSphere || b.kind == Collider::Kind::kSphere) {
    const Collider& s = a.kind == Collider::Kind::kSphere ? a : b;
    const Collider& h = a.kind == Collider::Kind::kSphere ? b : a;
    for (const auto& part : h.parts) {
      if (!part.bounds().overlaps(s.bounds)) continue;
      if (part.signed_distance(s.center) < s.radius - kContactEpsilon) return true;
    }
    return false;
  }
  for (const auto& pa : a.parts) {
    for (const auto& pb : b.parts) {
      if (hull_penetration(pa, pb)) return true;
    }
  }
  return false;
}

std::optional<SphereContact> sphere_contact(const Vec3& center, double radius, const Collider& c, double slop) {
  if (c.kind == Collider::Kind::kSphere) {
    const Vec3 d = center - c.center;
    const double dist = length(d);
    const double depth = radius + c.radius - dist;
    if (depth < -slop) return std::nullopt;
    return SphereContact{dist > 0.0 ? d / dist : Vec3{0, 1, 0}, depth};
  }
  std::optional<SphereContact> best;
  Aabb query;
  query.expand(center - Vec3{radius + slop, radius + slop, radius + slop});
  query.expand(center + Vec3{radius + slop, radius + slop, radius + slop});
  for (const auto& part : c.parts) {
    if (!part.bounds().overlaps(query)) continue;
    Vec3 normal;
    const double sd = part.signed_distance(center, nullptr, &normal);
    const double depth = radius - sd;
    if (depth < -slop) continue;
    if (!best || depth > best->depth) best = SphereContact{normal, depth};
  }
  return best;
}

std::optional<Penetration> collider_penetration(const Collider& a, const Collider& b) {
  if (!a.bounds.overlaps(b.bounds)) return std::nullopt;
  std::optional<Penetration> best;
  for (const auto& pa : a.parts) {
    for (const auto& pb : b.parts) {
      auto p = hull_penetration(pa, pb);
      if (p && (!best || p->depth > best->depth)) best = p;
    }
  }
  return best;
}

namespace {

void to_rect_local(double x, double z, const Vec3& c, double yaw_degrees, double& lx, double& lz) {
  const double r = deg_to_rad(yaw_degrees);
  const double dx = x - c.x;
  const double dz = z - c.z;
  lx = dx * std::cos(r) - dz * std::sin(r);
  lz = dx * std::sin(r) + dz * std::cos(r);
}

}  // namespace

bool disc_overlaps_rect(double cx, double cz, double radius, const Vec3& rect_center, double yaw_degrees,
                        double half_x, double half_z) {
  double lx, lz;
  to_rect_local(cx, cz, rect_center, yaw_degrees, lx, lz);
  const double qx = std::clamp(lx, -half_x, half_x);
  const double qz = std::clamp(lz, -half_z, half_z);
  const bool inside = std::abs(lx) < half_x && std::abs(lz) < half_z;
  if (inside) return true;
  const double d = std::hypot(lx - qx, lz - qz);
  return d < radius - kContactEpsilon;
}

bool point_in_rect(double x, double z, const Vec3& rect_center, double yaw_degrees, double half_x, double half_z) {
  double lx, lz;
  to_rect_local(x, z, rect_center, yaw_degrees, lx, lz);
  return std::abs(lx) <= half_x && std::abs(lz) <= half_z;
}

}  // namespace aai
