#include "aai/physics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <fmt/format.h>

namespace aai {

bool ContactSet::contains(int id) const { return std::find(touched.begin(), touched.end(), id) != touched.end(); }

void apply_agent_action(WorldState& world, const Action& a) {
  if (!a.valid()) throw InvalidActionError(fmt::format("invalid action ({}, {})", a.move, a.rotate));
  double yaw = world.agent.body.yaw;
  if (a.rotate == 1) yaw += world.params.turn_degrees;
  if (a.rotate == 2) yaw -= world.params.turn_degrees;
  yaw = std::fmod(yaw, 360.0);
  if (yaw < 0.0) yaw += 360.0;
  world.agent.body.yaw = yaw;
  world.agent.drive = a.move == 1 ? 1.0 : a.move == 2 ? -1.0 : 0.0;
}

namespace {

struct Dyn {
  BodyState* body = nullptr;
  Collider* collider = nullptr;  // null for the agent
  bool sphere = false;
  double radius = 0.0;
  bool agent = false;
  bool goal = false;
  bool moving = false;
  Vec3* travel = nullptr;
  int id = -1;

  double inv_mass() const { return 1.0 / body->mass; }

  Vec3 center() const {
    if (agent) return body->position + Vec3{0.0, radius, 0.0};
    return collider->center;
  }

  Aabb bounds() const {
    if (!sphere) return collider->bounds;
    Aabb b;
    const Vec3 c = center();
    b.expand(c - Vec3{radius, radius, radius});
    b.expand(c + Vec3{radius, radius, radius});
    return b;
  }

  void move(const Vec3& d) {
    body->position += d;
    if (collider) collider->translate(d);
  }
};

struct Contact {
  Vec3 normal;  // towards the first body
  double depth = 0.0;
};

std::optional<Contact> against_static(const Dyn& a, const Collider& s) {
  if (!a.bounds().overlaps(s.bounds)) return std::nullopt;
  if (a.sphere) {
    auto c = sphere_contact(a.center(), a.radius, s);
    if (!c || c->depth <= 0.0) return std::nullopt;
    return Contact{c->normal, c->depth};
  }
  auto p = collider_penetration(*a.collider, s);
  if (!p) return std::nullopt;
  return Contact{p->normal, p->depth};
}

std::optional<Contact> between(const Dyn& a, const Dyn& b) {
  if (!a.bounds().overlaps(b.bounds())) return std::nullopt;
  if (a.sphere && b.sphere) {
    const Vec3 d = a.center() - b.center();
    const double dist = length(d);
    const double depth = a.radius + b.radius - dist;
    if (depth <= 0.0) return std::nullopt;
    return Contact{dist > 0.0 ? d / dist : Vec3{0.0, 1.0, 0.0}, depth};
  }
  if (a.sphere) {
    auto c = sphere_contact(a.center(), a.radius, *b.collider);
    if (!c || c->depth <= 0.0) return std::nullopt;
    return Contact{c->normal, c->depth};
  }
  if (b.sphere) {
    auto c = sphere_contact(b.center(), b.radius, *a.collider);
    if (!c || c->depth <= 0.0) return std::nullopt;
    return Contact{c->normal * -1.0, c->depth};
  }
  auto p = collider_penetration(*a.collider, *b.collider);
  if (!p) return std::nullopt;
  return Contact{p->normal, p->depth};
}

double ground_depth(const Dyn& a) {
  if (a.sphere) return a.radius - a.center().y;
  return -a.collider->bounds.lo.y;
}

double response_restitution(double vn, const PhysicsParams& p) {
  return -vn > p.bounce_threshold ? p.restitution : 0.0;
}

void reflect_travel(Dyn& a, const Vec3& n, const PhysicsParams& p) {
  if (!a.moving) return;
  Vec3 nh{n.x, 0.0, n.z};
  const double len = length(nh);
  if (len < 1e-6) return;
  nh = nh / len;
  const double along = dot(*a.travel, nh);
  if (along >= 0.0) return;
  *a.travel = normalized(*a.travel - nh * (2.0 * along));
  const Vec3 h = *a.travel * p.goal_speed;
  a.body->velocity = {h.x, a.body->velocity.y, h.z};
}

void resolve_static(Dyn& a, const Contact& c, const PhysicsParams& p) {
  a.move(c.normal * c.depth);
  Vec3& v = a.body->velocity;
  const double vn = dot(v, c.normal);
  if (vn < 0.0) v -= c.normal * ((1.0 + response_restitution(vn, p)) * vn);
  if (c.normal.y > 0.5) a.body->grounded = true;
  reflect_travel(a, c.normal, p);
}

void resolve_pair(Dyn& a, Dyn& b, const Contact& c, const PhysicsParams& p) {
  const double wa = a.inv_mass();
  const double wb = b.inv_mass();
  const double w = wa + wb;
  a.move(c.normal * (c.depth * wa / w));
  b.move(c.normal * (-c.depth * wb / w));
  const double vn = dot(a.body->velocity - b.body->velocity, c.normal);
  if (vn < 0.0) {
    const double j = -(1.0 + response_restitution(vn, p)) * vn / w;
    a.body->velocity += c.normal * (j * wa);
    b.body->velocity -= c.normal * (j * wb);
  }
  if (c.normal.y > 0.5) a.body->grounded = true;
  if (c.normal.y < -0.5) b.body->grounded = true;
  reflect_travel(a, c.normal, p);
  reflect_travel(b, c.normal * -1.0, p);
}

void record_touch(const Dyn& agent, const Dyn& goal, ContactSet& contacts) {
  const double dist = length(agent.center() - goal.center());
  if (dist <= agent.radius + goal.radius + kTouchSlop && !contacts.contains(goal.id)) contacts.touched.push_back(goal.id);
}

}  // namespace

void substep(WorldState& world, ContactSet& contacts) {
  const PhysicsParams& p = world.params;
  const double dt = p.dt;

  std::vector<Dyn> dyn;
  dyn.reserve(world.objects.size() + 1);
  {
    Dyn a;
    a.body = &world.agent.body;
    a.sphere = true;
    a.radius = kAgentRadius;
    a.agent = true;
    a.id = -2;
    dyn.push_back(a);
  }
  std::vector<const Collider*> statics;
  for (auto& o : world.objects) {
    const ObjectClass cls = o.entry->object_class;
    if (cls == ObjectClass::kZone) continue;
    if (cls == ObjectClass::kImmovable) {
      statics.push_back(&o.collider);
      continue;
    }
    Dyn d;
    d.body = &o.body;
    d.collider = &o.collider;
    d.sphere = o.entry->is_sphere();
    d.radius = d.sphere ? o.radius() : 0.0;
    d.goal = cls == ObjectClass::kRewardSphere;
    d.moving = o.entry->moving;
    d.travel = &o.travel;
    d.id = o.id;
    dyn.push_back(d);
  }
  std::vector<Collider> fences;
  fences.reserve(world.fences.size());
  for (const auto& f : world.fences) fences.push_back(Collider::hulls({f.barrier}));
  for (const auto& f : fences) statics.push_back(&f);

  double max_disp = 0.0;
  for (auto& d : dyn) {
    BodyState& b = *d.body;
    Vec3 h{b.velocity.x, 0.0, b.velocity.z};
    if (d.moving) {
      h = *d.travel * p.goal_speed;
    } else {
      Vec3 accel = h * -p.drag;
      if (d.agent) accel += heading_vector(b.yaw) * (world.agent.drive * p.drive_force / b.mass);
      h += accel * dt;
      if (b.grounded) {
        const double s = length(h);
        if (s > 0.0) h = h * (std::max(0.0, s - p.friction * p.gravity * dt) / s);
      }
    }
    b.velocity = {h.x, b.velocity.y - p.gravity * dt, h.z};
    b.grounded = false;
    max_disp = std::max(max_disp, length(b.velocity) * dt);
  }

  const int micro = std::max(1, static_cast<int>(std::ceil(max_disp / kMaxMicroStep)));
  const double h = dt / micro;
  const Vec3 up{0.0, 1.0, 0.0};
  for (int m = 0; m < micro; ++m) {
    for (auto& d : dyn) d.move(d.body->velocity * h);
    for (std::size_t j = 1; j < dyn.size(); ++j) {
      if (dyn[j].goal) record_touch(dyn[0], dyn[j], contacts);
    }
    for (int it = 0; it < kContactIterations; ++it) {
      double deepest = 0.0;
      for (auto& d : dyn) {
        const double g = ground_depth(d);
        if (g > 0.0) {
          resolve_static(d, {up, g}, p);
          deepest = std::max(deepest, g);
        }
        for (const Collider* s : statics) {
          if (auto c = against_static(d, *s)) {
            resolve_static(d, *c, p);
            deepest = std::max(deepest, c->depth);
          }
        }
      }
      for (std::size_t i = 0; i < dyn.size(); ++i) {
        for (std::size_t j = i + 1; j < dyn.size(); ++j) {
          if (dyn[i].agent && dyn[j].goal) continue;
          if (auto c = between(dyn[i], dyn[j])) {
            resolve_pair(dyn[i], dyn[j], *c, p);
            deepest = std::max(deepest, c->depth);
          }
        }
      }
      if (deepest < 1e-7) break;
    }
  }
  world.elapsed += dt;
}

ContactSet step_physics(WorldState& world) {
  ContactSet contacts;
  for (int i = 0; i < world.params.substeps; ++i) substep(world, contacts);
  return contacts;
}

double kinetic_energy(const WorldState& world) {
  auto ke = [](const BodyState& b) { return 0.5 * b.mass * dot(b.velocity, b.velocity); };
  double e = ke(world.agent.body);
  for (const auto& o : world.objects) {
    if (o.entry->is_dynamic()) e += ke(o.body);
  }
  return e;
}

Vec3 to_local_frame(const Vec3& velocity, double yaw_degrees) {
  const Mat3 r = yaw_rotation(yaw_degrees);
  const Vec3 local = r.transpose_mul(velocity);
  return {local.z, local.x, local.y};
}

std::string trajectory_csv_header() { return "step,x,y,z,yaw,vx,vy,vz\n"; }

std::string trajectory_csv_row(int step, const WorldState& world) {
  const BodyState& b = world.agent.body;
  return fmt::format("{},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g},{:.9g}\n", step, b.position.x, b.position.y,
                     b.position.z, b.yaw, b.velocity.x, b.velocity.y, b.velocity.z);
}

}  // namespace aai
