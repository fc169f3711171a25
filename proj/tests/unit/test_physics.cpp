#include <gtest/gtest.h>

#include <cmath>

#include "aai/physics.hpp"
#include "aai/spawn.hpp"

namespace {

aai::ItemSpec item(std::string name, std::vector<aai::Vec3> positions = {}, std::vector<aai::Vec3> sizes = {},
                   std::vector<double> rotations = {}) {
  aai::ItemSpec s;
  s.name = std::move(name);
  s.positions = std::move(positions);
  s.sizes = std::move(sizes);
  s.rotations = std::move(rotations);
  return s;
}

aai::WorldState world_of(std::vector<aai::ItemSpec> items) {
  aai::ArenaSpec a;
  a.items = std::move(items);
  auto [w, r] = aai::build_world(a, 1);
  return std::move(w);
}

}  // namespace

TEST(Physics, TurnsSixDegreesPerAction) {
  auto w = world_of({item("Agent", {{20, 0, 20}}, {}, {0})});
  aai::apply_agent_action(w, {0, 1});
  EXPECT_DOUBLE_EQ(w.agent.body.yaw, 6.0);
  aai::apply_agent_action(w, {0, 2});
  aai::apply_agent_action(w, {0, 2});
  EXPECT_DOUBLE_EQ(w.agent.body.yaw, 354.0);
  EXPECT_THROW(aai::apply_agent_action(w, {3, 0}), aai::InvalidActionError);
}

TEST(Physics, ForwardDriveMovesAlongHeading) {
  auto w = world_of({item("Agent", {{20, 0, 20}}, {}, {90})});
  for (int i = 0; i < 10; ++i) {
    aai::apply_agent_action(w, {1, 0});
    aai::step_physics(w);
  }
  EXPECT_GT(w.agent.body.position.x, 21.0);
  EXPECT_NEAR(w.agent.body.position.z, 20.0, 1e-9);
  const auto local = aai::to_local_frame(w.agent.body.velocity, w.agent.body.yaw);
  EXPECT_GT(local.x, 0.0);
  EXPECT_NEAR(local.y, 0.0, 1e-9);
}

TEST(Physics, SpeedSettlesBelowTerminal) {
  auto w = world_of({item("Agent", {{20, 0, 2}}, {}, {0})});
  const auto& p = w.params;
  double top = 0.0;
  for (int i = 0; i < 60; ++i) {
    aai::apply_agent_action(w, {1, 0});
    aai::step_physics(w);
    top = std::max(top, std::hypot(w.agent.body.velocity.x, w.agent.body.velocity.z));
  }
  EXPECT_LE(top, p.drive_force / (aai::kAgentMass * p.drag) + 1e-9);
  EXPECT_GT(top, 5.0);
}

TEST(Physics, FreeFallMatchesKinematics) {
  for (double h : {1.0, 2.5, 5.0, 9.0}) {
    auto w = world_of({item("Agent", {{20, 0, 20}})});
    w.agent.body.position.y = h;
    aai::ContactSet c;
    int n = 0;
    do {
      aai::substep(w, c);
      ++n;
    } while (w.agent.body.velocity.y < 0.0 && n < 10000);
    const double expected = std::sqrt(2.0 * h / w.params.gravity);
    EXPECT_LE(std::abs(n * w.params.dt - expected), w.params.dt) << h;
  }
}

TEST(Physics, FenceStopsTheAgent) {
  auto w = world_of({item("Agent", {{20, 0, 37}}, {}, {0})});
  for (int i = 0; i < 100; ++i) {
    aai::apply_agent_action(w, {1, 0});
    aai::step_physics(w);
  }
  EXPECT_LE(w.agent.body.position.z, aai::kArenaSize - aai::kAgentRadius + 1e-6);
}

TEST(Physics, ThinWallIsNotTunnelled) {
  auto w = world_of({item("Agent", {{20, 0, 5}}, {}, {0}), item("Wall", {{20, 0, 20}}, {{10, 2, 0.1}}, {0})});
  for (int i = 0; i < 80; ++i) {
    aai::apply_agent_action(w, {1, 0});
    aai::step_physics(w);
  }
  EXPECT_LT(w.agent.body.position.z, 20.0 - 0.05 - aai::kAgentRadius + 1e-6);
}

TEST(Physics, HeavierBoxMovesLess) {
  auto push = [](const std::string& name) {
    auto w = world_of({item("Agent", {{20, 0, 10}}, {}, {0}), item(name, {{20, 0, 11.5}}, {{2, 1, 2}}, {0})});
    const double z0 = w.objects.at(0).body.position.z;
    for (int i = 0; i < 50; ++i) {
      aai::apply_agent_action(w, {1, 0});
      aai::step_physics(w);
    }
    return w.objects.at(0).body.position.z - z0;
  };
  const double light = push("Cardbox1");
  const double heavy = push("Cardbox2");
  EXPECT_GT(light, 1.0);
  EXPECT_LE(heavy, 0.55 * light);
}

TEST(Physics, TouchingAGoalIsRecorded) {
  auto w = world_of({item("Agent", {{20, 0, 10}}, {}, {0}), item("GoodGoal", {{20, 0, 13}}, {{1, 1, 1}})});
  bool touched = false;
  for (int i = 0; i < 30 && !touched; ++i) {
    aai::apply_agent_action(w, {1, 0});
    touched = aai::step_physics(w).contains(w.objects.at(0).id);
  }
  EXPECT_TRUE(touched);
}

TEST(Physics, MovingGoalTravels) {
  auto w = world_of({item("Agent", {{5, 0, 5}}), item("GoodGoalMove", {{20, 0, 20}}, {{1, 1, 1}}, {90})});
  const auto start = w.objects.at(0).body.position;
  for (int i = 0; i < 10; ++i) aai::step_physics(w);
  const auto end = w.objects.at(0).body.position;
  EXPECT_NEAR(end.x - start.x, 10 * w.params.substeps * w.params.dt * w.params.goal_speed, 1e-6);
}

TEST(Physics, TrajectoryCsv) {
  auto w = world_of({item("Agent", {{20, 0, 20}})});
  EXPECT_EQ(aai::trajectory_csv_header(), "step,x,y,z,yaw,vx,vy,vz\n");
  EXPECT_EQ(aai::trajectory_csv_row(0, w).substr(0, 5), "0,20,");
}
