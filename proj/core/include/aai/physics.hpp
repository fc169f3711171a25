#pragma once

#include <string>
#include <vector>

#include "aai/world.hpp"

namespace aai {

/// Largest displacement any body makes between two contact passes.
inline constexpr double kMaxMicroStep = 0.1;
/// Position-correction passes per micro-step.
inline constexpr int kContactIterations = 6;
/// Agent-goal separation still counted as a touch.
inline constexpr double kTouchSlop = 1e-6;

/// Goals the agent touched during one action step, in first-touch order.
struct ContactSet {
  std::vector<int> touched;

  bool contains(int id) const;
};

/// Rotates the agent instantly and queues the drive force.
void apply_agent_action(WorldState& world, const Action& a);

/// Advances one sub-step of params.dt, accumulating agent-goal touches.
void substep(WorldState& world, ContactSet& contacts);

/// Advances params.substeps sub-steps.
ContactSet step_physics(WorldState& world);

double kinetic_energy(const WorldState& world);

/// (forward, right, up) components of a world velocity for a body at `yaw`.
Vec3 to_local_frame(const Vec3& velocity, double yaw_degrees);

/// Debug trajectory dump: step, pose, velocity.
std::string trajectory_csv_header();
std::string trajectory_csv_row(int step, const WorldState& world);

}  // namespace aai
