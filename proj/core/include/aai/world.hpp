#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "aai/catalog.hpp"
#include "aai/collider.hpp"
#include "aai/rng.hpp"
#include "aai/types.hpp"

namespace aai {

/// Discrete action: drive m and rotation r, each in {0, 1, 2}.
struct Action {
  int move = 0;    // 0 none, 1 forward, 2 backward
  int rotate = 0;  // 0 none, 1 right, 2 left

  bool valid() const { return move >= 0 && move <= 2 && rotate >= 0 && rotate <= 2; }
  bool operator==(const Action&) const = default;
};

class InvalidActionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Dynamics constants. Fixed for an episode.
struct PhysicsParams {
  double gravity = 9.81;        // units/s^2, downwards
  double dt = 0.02;             // sub-step, seconds
  int substeps = 3;             // sub-steps per action
  double drive_force = 30.0;    // N
  double drag = 2.5;            // 1/s, horizontal linear drag
  double friction = 0.4;        // ground friction coefficient
  double restitution = 0.1;
  double bounce_threshold = 1.0;  // normal speeds below this do not bounce
  double goal_speed = 3.0;      // units/s for *Move goals
  double turn_degrees = 6.0;    // per rotate action
};

struct BodyState {
  Vec3 position;  // bottom-center of the object
  double yaw = 0.0;
  Vec3 velocity;
  double mass = 0.0;
  bool kinematic = true;
  bool grounded = false;
};

struct PlacedObject {
  int id = -1;
  const CatalogEntry* entry = nullptr;
  Vec3 size;
  Rgb color;
  Collider collider;
  BodyState body;
  Vec3 travel;  // unit heading for moving goals
  int item_index = -1;

  std::string_view name() const { return entry->name; }
  double radius() const { return size.x / 2.0; }  // spheres only
};

inline constexpr double kAgentRadius = 0.5;
inline constexpr double kAgentMass = 1.0;
inline constexpr double kFenceHeight = 1.5;   // visible height
inline constexpr double kFenceBarrier = 50.0;  // collision height

struct AgentBody {
  BodyState body;
  double drive = 0.0;  // queued drive: +1 forward, -1 backward, 0 none

  Vec3 center() const { return body.position + Vec3{0.0, kAgentRadius, 0.0}; }
  Collider collider() const { return Collider::sphere(center(), kAgentRadius); }
};

struct Fence {
  ConvexHull barrier;  // physics
  ConvexHull visible;  // rendering
};

/// Instantiated arena.
struct WorldState {
  std::vector<PlacedObject> objects;
  AgentBody agent;
  std::vector<Fence> fences;
  int time_limit = 0;
  std::vector<int> blackouts;
  PhysicsParams params;
  Rng rng;
  double elapsed = 0.0;

  const PlacedObject* find(int id) const;
  PlacedObject* find(int id);
  void remove(int id);
  std::size_t count(std::string_view name) const;
};

/// The four perimeter fences of the 40 x 40 arena.
std::vector<Fence> make_perimeter();

}  // namespace aai
