#include "aai/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace aai {

Mat3 yaw_rotation(double degrees) {
  const double r = deg_to_rad(degrees);
  const double c = std::cos(r);
  const double s = std::sin(r);
  return {{c, 0.0, -s}, {0.0, 1.0, 0.0}, {s, 0.0, c}};
}

Mat3 roll_rotation(double radians) {
  const double c = std::cos(radians);
  const double s = std::sin(radians);
  return {{c, s, 0.0}, {-s, c, 0.0}, {0.0, 0.0, 1.0}};
}

Vec3 heading_vector(double yaw_degrees) {
  const double r = deg_to_rad(yaw_degrees);
  return {std::sin(r), 0.0, std::cos(r)};
}

void Aabb::expand(const Vec3& p) {
  lo = {std::min(lo.x, p.x), std::min(lo.y, p.y), std::min(lo.z, p.z)};
  hi = {std::max(hi.x, p.x), std::max(hi.y, p.y), std::max(hi.z, p.z)};
}

void Aabb::merge(const Aabb& o) {
  expand(o.lo);
  expand(o.hi);
}

bool Aabb::overlaps(const Aabb& o, double margin) const {
  return lo.x - margin <= o.hi.x && o.lo.x - margin <= hi.x && lo.y - margin <= o.hi.y && o.lo.y - margin <= hi.y &&
         lo.z - margin <= o.hi.z && o.lo.z - margin <= hi.z;
}

std::optional<double> Aabb::ray_entry(const Vec3& origin, const Vec3& dir, double t_max) const {
  double t0 = 0.0;
  double t1 = t_max;
  const double o[3] = {origin.x, origin.y, origin.z};
  const double d[3] = {dir.x, dir.y, dir.z};
  const double l[3] = {lo.x, lo.y, lo.z};
  const double h[3] = {hi.x, hi.y, hi.z};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(d[i]) < 1e-300) {
      if (o[i] < l[i] || o[i] > h[i]) return std::nullopt;
      continue;
    }
    double a = (l[i] - o[i]) / d[i];
    double b = (h[i] - o[i]) / d[i];
    if (a > b) std::swap(a, b);
    t0 = std::max(t0, a);
    t1 = std::min(t1, b);
    if (t0 > t1) return std::nullopt;
  }
  return t0;
}

namespace {

/// Orders the vertex indices of a planar face counter-clockwise about `n`.
std::vector<int> ccw_loop(const std::vector<Vec3>& verts, std::vector<int> idx, const Vec3& n) {
  Vec3 c;
  for (int i : idx) c += verts[i];
  c = c / static_cast<double>(idx.size());
  const Vec3 u = normalized(verts[idx[0]] - c);
  const Vec3 v = cross(n, u);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    const Vec3 da = verts[a] - c;
    const Vec3 db = verts[b] - c;
    return std::atan2(dot(da, v), dot(da, u)) < std::atan2(dot(db, v), dot(db, u));
  });
  return idx;
}

Vec3 closest_on_segment(const Vec3& p, const Vec3& a, const Vec3& b) {
  const Vec3 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return a;
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return a + ab * t;
}

}  // namespace

ConvexHull ConvexHull::box(const Vec3& center, const Mat3& rotation, const Vec3& half) {
  ConvexHull h;
  for (int i = 0; i < 8; ++i) {
    const Vec3 local{(i & 1) ? half.x : -half.x, (i & 2) ? half.y : -half.y, (i & 4) ? half.z : -half.z};
    h.vertices_.push_back(center + rotation * local);
  }
  const Vec3 axes[3] = {rotation.c0, rotation.c1, rotation.c2};
  for (int axis = 0; axis < 3; ++axis) {
    for (int sign : {-1, 1}) {
      std::vector<int> idx;
      for (int i = 0; i < 8; ++i) {
        if (((i >> axis) & 1) == (sign > 0 ? 1 : 0)) idx.push_back(i);
      }
      Face f;
      f.normal = axes[axis] * static_cast<double>(sign);
      f.loop = ccw_loop(h.vertices_, idx, f.normal);
      f.offset = dot(f.normal, h.vertices_[f.loop[0]]);
      h.faces_.push_back(std::move(f));
    }
  }
  h.finalize();
  return h;
}

ConvexHull ConvexHull::wedge(const Vec3& base, const Mat3& rotation, const Vec3& size) {
  ConvexHull h;
  const double hx = size.x / 2.0;
  const double hz = size.z / 2.0;
  const double top = size.y;
  // 0..3 bottom rectangle, 4..5 top edge at the high (+z) end.
  const Vec3 local[6] = {{-hx, 0, -hz}, {hx, 0, -hz}, {hx, 0, hz}, {-hx, 0, hz}, {-hx, top, hz}, {hx, top, hz}};
  for (const auto& p : local) h.vertices_.push_back(base + rotation * p);
  auto add_face = [&](std::vector<int> idx, const Vec3& local_normal) {
    Face f;
    f.normal = normalized(rotation * local_normal);
    f.loop = ccw_loop(h.vertices_, std::move(idx), f.normal);
    f.offset = dot(f.normal, h.vertices_[f.loop[0]]);
    h.faces_.push_back(std::move(f));
  };
  add_face({0, 1, 2, 3}, {0, -1, 0});
  add_face({2, 3, 4, 5}, {0, 0, 1});
  add_face({0, 3, 4}, {-1, 0, 0});
  add_face({1, 2, 5}, {1, 0, 0});
  add_face({0, 1, 5, 4}, {0, size.z, -size.y});
  h.finalize();
  return h;
}

void ConvexHull::finalize() {
  bounds_ = Aabb{};
  for (const auto& v : vertices_) bounds_.expand(v);
  edge_dirs_.clear();
  for (const auto& f : faces_) {
    for (std::size_t i = 0; i < f.loop.size(); ++i) {
      const Vec3 e = normalized(vertices_[f.loop[(i + 1) % f.loop.size()]] - vertices_[f.loop[i]]);
      const bool seen = std::any_of(edge_dirs_.begin(), edge_dirs_.end(),
                                    [&](const Vec3& d) { return length(cross(d, e)) < 1e-9; });
      if (!seen) edge_dirs_.push_back(e);
    }
  }
}

Vec3 ConvexHull::centroid() const {
  Vec3 c;
  for (const auto& v : vertices_) c += v;
  return c / static_cast<double>(vertices_.size());
}

void ConvexHull::translate(const Vec3& d) {
  for (auto& v : vertices_) v += d;
  for (auto& f : faces_) f.offset += dot(f.normal, d);
  bounds_.translate(d);
}

double ConvexHull::plane_distance(const Vec3& p) const {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& f : faces_) best = std::max(best, dot(f.normal, p) - f.offset);
  return best;
}

double ConvexHull::signed_distance(const Vec3& p, Vec3* closest, Vec3* normal) const {
  double max_d = -std::numeric_limits<double>::infinity();
  const Face* max_face = nullptr;
  for (const auto& f : faces_) {
    const double d = dot(f.normal, p) - f.offset;
    if (d > max_d) {
      max_d = d;
      max_face = &f;
    }
  }
  if (max_d <= 0.0) {
    if (closest) *closest = p - max_face->normal * max_d;
    if (normal) *normal = max_face->normal;
    return max_d;
  }
  double best = std::numeric_limits<double>::infinity();
  Vec3 best_point = p;
  for (const auto& f : faces_) {
    const double d = dot(f.normal, p) - f.offset;
    if (d < 0.0) continue;
    const Vec3 q = p - f.normal * d;
    bool inside = true;
    for (std::size_t i = 0; i < f.loop.size(); ++i) {
      const Vec3& a = vertices_[f.loop[i]];
      const Vec3& b = vertices_[f.loop[(i + 1) % f.loop.size()]];
      if (dot(cross(b - a, q - a), f.normal) < 0.0) {
        inside = false;
        break;
      }
    }
    Vec3 candidate = q;
    if (!inside) {
      double edge_best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < f.loop.size(); ++i) {
        const Vec3 c = closest_on_segment(p, vertices_[f.loop[i]], vertices_[f.loop[(i + 1) % f.loop.size()]]);
        const double dist = length(p - c);
        if (dist < edge_best) {
          edge_best = dist;
          candidate = c;
        }
      }
    }
    const double dist = length(p - candidate);
    if (dist < best) {
      best = dist;
      best_point = candidate;
    }
  }
  if (closest) *closest = best_point;
  if (normal) *normal = best > 0.0 ? (p - best_point) / best : max_face->normal;
  return best;
}

void ConvexHull::project(const Vec3& axis, double& lo, double& hi) const {
  lo = std::numeric_limits<double>::infinity();
  hi = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices_) {
    const double d = dot(axis, v);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
}

std::optional<RayHit> ConvexHull::ray_intersect(const Vec3& origin, const Vec3& dir, double t_min,
                                                double t_max) const {
  double t_enter = -std::numeric_limits<double>::infinity();
  double t_exit = std::numeric_limits<double>::infinity();
  Vec3 enter_normal;
  for (const auto& f : faces_) {
    const double denom = dot(f.normal, dir);
    const double dist = dot(f.normal, origin) - f.offset;
    if (std::abs(denom) < 1e-15) {
      if (dist > 0.0) return std::nullopt;
      continue;
    }
    const double t = -dist / denom;
    if (denom < 0.0) {
      if (t > t_enter) {
        t_enter = t;
        enter_normal = f.normal;
      }
    } else {
      t_exit = std::min(t_exit, t);
    }
    if (t_enter > t_exit) return std::nullopt;
  }
  if (t_enter < t_min || t_enter > t_max) return std::nullopt;
  return RayHit{t_enter, enter_normal};
}

std::optional<Penetration> hull_penetration(const ConvexHull& a, const ConvexHull& b) {
  if (!a.bounds().overlaps(b.bounds())) return std::nullopt;
  double best_depth = std::numeric_limits<double>::infinity();
  Vec3 best_axis;
  const Vec3 delta = a.centroid() - b.centroid();
  auto test_axis = [&](Vec3 axis) {
    const double len = length(axis);
    if (len < 1e-9) return true;
    axis = axis / len;
    double alo, ahi, blo, bhi;
    a.project(axis, alo, ahi);
    b.project(axis, blo, bhi);
    const double overlap = std::min(ahi - blo, bhi - alo);
    if (overlap <= kContactEpsilon) return false;
    if (overlap < best_depth) {
      best_depth = overlap;
      best_axis = dot(axis, delta) < 0.0 ? -axis : axis;
    }
    return true;
  };
  for (const auto& f : a.faces()) {
    if (!test_axis(f.normal)) return std::nullopt;
  }
  for (const auto& f : b.faces()) {
    if (!test_axis(f.normal)) return std::nullopt;
  }
  for (const auto& ea : a.edge_directions()) {
    for (const auto& eb : b.edge_directions()) {
      if (!test_axis(cross(ea, eb))) return std::nullopt;
    }
  }
  return Penetration{best_axis, best_depth};
}

}  // namespace aai
