#include "aai/raycast.hpp"

#include <cmath>

namespace aai {

std::optional<RayHit> ray_sphere(const Vec3& origin, const Vec3& dir, const Vec3& center, double radius, double t_min,
                                 double t_max) {
  const Vec3 oc = origin - center;
  const double b = dot(oc, dir);
  const double c = dot(oc, oc) - radius * radius;
  if (c < 0.0) return std::nullopt;
  const double disc = b * b - c;
  if (disc < 0.0) return std::nullopt;
  const double t = -b - std::sqrt(disc);
  if (t < t_min || t > t_max) return std::nullopt;
  return RayHit{t, normalized(origin + dir * t - center)};
}

namespace {

struct Roots {
  bool ok = false;
  double lo = 0.0;
  double hi = 0.0;
};

Roots ellipse_roots(const Vec3& o, const Vec3& d, double a, double b) {
  const double qa = d.x * d.x / (a * a) + d.y * d.y / (b * b);
  const double qb = 2.0 * (o.x * d.x / (a * a) + o.y * d.y / (b * b));
  const double qc = o.x * o.x / (a * a) + o.y * o.y / (b * b) - 1.0;
  if (qa < 1e-18) return {};
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return {};
  const double s = std::sqrt(disc);
  const double q = qb < 0.0 ? -0.5 * (qb - s) : -0.5 * (qb + s);
  double r0 = q / qa;
  double r1 = q != 0.0 ? qc / q : r0;
  if (r0 > r1) std::swap(r0, r1);
  return {true, r0, r1};
}

double ellipse_value(double x, double y, double a, double b) { return x * x / (a * a) + y * y / (b * b); }

bool in_section(double x, double y, double ao, double bo, double ai, double bi) {
  return y >= 0.0 && ellipse_value(x, y, ao, bo) <= 1.0 && ellipse_value(x, y, ai, bi) >= 1.0;
}

}  // namespace

bool arch_contains(const Vec3& p, const Vec3& base, double yaw_degrees, const Vec3& size) {
  const Mat3 r = yaw_rotation(yaw_degrees);
  const Vec3 l = r.transpose_mul(p - base);
  const double ao = size.x / 2.0;
  const double bo = size.y;
  return std::abs(l.z) <= size.z / 2.0 &&
         in_section(l.x, l.y, ao, bo, ao - kArchThickness, bo - kArchThickness);
}

std::optional<RayHit> ray_arch(const Vec3& origin, const Vec3& dir, const Vec3& base, double yaw_degrees,
                               const Vec3& size, double t_min, double t_max) {
  const Mat3 r = yaw_rotation(yaw_degrees);
  const Vec3 o = r.transpose_mul(origin - base);
  const Vec3 d = r.transpose_mul(dir);
  const double ao = size.x / 2.0;
  const double bo = size.y;
  const double ai = ao - kArchThickness;
  const double bi = bo - kArchThickness;
  const double hz = size.z / 2.0;

  double best = t_max;
  Vec3 best_n;
  bool found = false;
  auto offer = [&](double t, const Vec3& n) {
    if (t >= t_min && t <= best) {
      best = t;
      best_n = n;
      found = true;
    }
  };

  if (const Roots outer = ellipse_roots(o, d, ao, bo); outer.ok) {
    const double t = outer.lo;
    const Vec3 p = o + d * t;
    if (p.y >= 0.0 && std::abs(p.z) <= hz) offer(t, normalized(Vec3{p.x / (ao * ao), p.y / (bo * bo), 0.0}));
  }
  if (const Roots inner = ellipse_roots(o, d, ai, bi); inner.ok) {
    const double t = inner.hi;
    const Vec3 p = o + d * t;
    if (p.y >= 0.0 && std::abs(p.z) <= hz) offer(t, normalized(Vec3{-p.x / (ai * ai), -p.y / (bi * bi), 0.0}));
  }
  if (std::abs(d.z) > 1e-15) {
    for (double sign : {-1.0, 1.0}) {
      const double zc = sign * hz;
      if (d.z * sign >= 0.0) continue;  // must travel towards the interior
      const double t = (zc - o.z) / d.z;
      const Vec3 p = o + d * t;
      if (in_section(p.x, p.y, ao, bo, ai, bi)) offer(t, {0.0, 0.0, sign});
    }
  }
  if (d.y > 1e-15) {
    const double t = -o.y / d.y;
    const Vec3 p = o + d * t;
    const double ax = std::abs(p.x);
    if (ax >= ai && ax <= ao && std::abs(p.z) <= hz) offer(t, {0.0, -1.0, 0.0});
  }
  if (!found) return std::nullopt;
  return RayHit{best, r * best_n};
}

std::optional<WorldHit> raycast(const WorldState& world, const Vec3& origin, const Vec3& direction,
                                const RaycastOptions& options) {
  std::optional<WorldHit> best;
  double limit = options.t_max;
  auto take = [&](WorldHit::Target target, int id, const RayHit& h) {
    if (h.distance <= limit) {
      limit = h.distance;
      best = WorldHit{target, id, h.distance, h.normal};
    }
  };

  if (direction.y < 0.0) {
    const double t = -origin.y / direction.y;
    if (t >= options.t_min && t <= limit) take(WorldHit::Target::kGround, -1, {t, {0.0, 1.0, 0.0}});
  }
  for (std::size_t i = 0; i < world.fences.size(); ++i) {
    const ConvexHull& hull = world.fences[i].visible;
    if (!hull.bounds().ray_entry(origin, direction, limit)) continue;
    if (auto h = hull.ray_intersect(origin, direction, options.t_min, limit)) {
      take(WorldHit::Target::kFence, static_cast<int>(i), *h);
    }
  }
  if (options.include_agent) {
    if (auto h = ray_sphere(origin, direction, world.agent.center(), kAgentRadius, options.t_min, limit)) {
      take(WorldHit::Target::kAgent, -2, *h);
    }
  }
  for (const auto& o : world.objects) {
    if (o.entry->is_zone()) continue;
    if (options.skip_transparent && o.entry->transparent) continue;
    if (o.entry->shape != ColliderShape::kArch && !o.collider.bounds.ray_entry(origin, direction, limit)) continue;
    std::optional<RayHit> h;
    switch (o.entry->shape) {
      case ColliderShape::kSphere:
        h = ray_sphere(origin, direction, o.collider.center, o.collider.radius, options.t_min, limit);
        break;
      case ColliderShape::kArch:
        h = ray_arch(origin, direction, o.body.position, o.body.yaw, o.size, options.t_min, limit);
        break;
      default:
        for (const auto& part : o.collider.parts) {
          if (auto ph = part.ray_intersect(origin, direction, options.t_min, limit); ph && (!h || ph->distance < h->distance)) {
            h = ph;
          }
        }
        break;
    }
    if (h) take(WorldHit::Target::kObject, o.id, *h);
  }
  return best;
}

}  // namespace aai
