#include <gtest/gtest.h>

#include "aai/config_io.hpp"
#include "aai/solvability.hpp"
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

aai::ArenaSpec arena_of(std::vector<aai::ItemSpec> items, int t = 100) {
  aai::ArenaSpec a;
  a.t = t;
  a.items = std::move(items);
  return a;
}

bool any_overlap(const aai::WorldState& w) {
  for (std::size_t i = 0; i < w.objects.size(); ++i) {
    const auto& a = w.objects[i];
    if (!a.entry->is_zone() && aai::overlap_test(a.collider, w.agent.collider())) return true;
    for (std::size_t j = i + 1; j < w.objects.size(); ++j) {
      const auto& b = w.objects[j];
      if (a.entry->is_zone() != b.entry->is_zone()) continue;
      if (aai::overlap_test(a.collider, b.collider)) return true;
    }
  }
  return false;
}

}  // namespace

TEST(Spawn, InstanceCountIsLongestList) {
  auto s = item("Wall", {{1, 0, 1}, {2, 0, 2}});
  s.rotations = {0, 1, 2};
  EXPECT_EQ(aai::instance_count(s), 3);
  EXPECT_EQ(aai::instance_count(item("GoodGoal")), 1);
}

TEST(Spawn, MaterializeKeepsFixedValues) {
  aai::Rng rng(1);
  auto s = item("Wall", {{10, 0, 12}}, {{2, 3, 4}});
  s.rotations = {30};
  s.colors = {{1, 2, 3}};
  const auto c = aai::materialize_instance(s, 0, rng);
  EXPECT_EQ(c.position, aai::Vec3(10, 0, 12));
  EXPECT_EQ(c.size, aai::Vec3(2, 3, 4));
  EXPECT_EQ(c.yaw, 30);
  EXPECT_EQ(c.color, (aai::Rgb{1, 2, 3}));
  EXPECT_FALSE(c.randomized_geometry);
}

TEST(Spawn, MaterializeDrawsInsideRanges) {
  aai::Rng rng(2);
  const auto& wall = aai::catalog_lookup("Wall");
  for (int i = 0; i < 500; ++i) {
    const auto c = aai::materialize_instance(item("Wall"), 0, rng);
    EXPECT_TRUE(c.randomized_geometry);
    EXPECT_TRUE(wall.size_x.contains(c.size.x));
    EXPECT_TRUE(wall.size_y.contains(c.size.y));
    EXPECT_TRUE(wall.size_z.contains(c.size.z));
    EXPECT_GE(c.yaw, 0.0);
    EXPECT_LT(c.yaw, 360.0);
    EXPECT_GE(c.position.x, 0.0);
    EXPECT_LE(c.position.x, aai::kArenaSize);
  }
}

TEST(Spawn, FixedPoseCollisionIsSkippedOnce) {
  const auto spec = arena_of({item("Agent", {{20, 0, 20}}), item("Wall", {{20, 0, 20}}, {{4, 2, 4}}, {0})});
  const auto [world, report] = aai::build_world(spec, 5);
  ASSERT_EQ(report.records.size(), 2u);
  EXPECT_EQ(report.records[1].status, aai::SpawnStatus::kSkippedFixedPose);
  EXPECT_EQ(report.records[1].attempts, 1);
  EXPECT_EQ(world.objects.size(), 0u);
}

TEST(Spawn, TouchingIsAllowed) {
  const auto spec = arena_of({item("Agent", {{20, 0, 20}}), item("Wall", {{22, 0, 20}}, {{3, 2, 3}}, {0})});
  const auto [world, report] = aai::build_world(spec, 5);
  EXPECT_EQ(report.placed("Wall"), 1);
}

TEST(Spawn, CrowdedArenaExhaustsRetries) {
  const auto spec = arena_of({item("Agent", {{20, 0, 0.5}}), item("Wall", {{20, 0, 20.6}}, {{40, 10, 38.8}}, {0}),
                              item("GoodGoal")});
  const auto [world, report] = aai::build_world(spec, 9);
  ASSERT_EQ(report.records.size(), 3u);
  EXPECT_EQ(report.records[1].status, aai::SpawnStatus::kPlaced);
  EXPECT_EQ(report.records[2].status, aai::SpawnStatus::kSkippedAfterRetries);
  EXPECT_EQ(report.records[2].attempts, aai::kMaxSpawnAttempts);
}

TEST(Spawn, ExtraAgentsAreSkipped) {
  const auto spec = arena_of({item("Agent", {{20, 0, 20}, {10, 0, 10}}), item("GoodGoal")});
  const auto [world, report] = aai::build_world(spec, 1);
  EXPECT_EQ(report.records[0].object_id, -2);
  EXPECT_EQ(report.records[1].status, aai::SpawnStatus::kSkippedExtraAgent);
  EXPECT_EQ(world.agent.body.position, aai::Vec3(20, 0, 20));
}

TEST(Spawn, AgentOutsideArenaThrows) {
  EXPECT_THROW(aai::build_world(arena_of({item("Agent", {{0.2, 0, 20}})}), 1), aai::AgentPlacementError);
}

TEST(Spawn, DeterministicAndOverlapFree) {
  auto spec = arena_of({item("GoodGoal"), item("BadGoal"), item("Wall"), item("Wall"), item("Cardbox1"),
                        item("CylinderTunnel"), item("Ramp"), item("HotZone"), item("DeathZone"), item("UObject"),
                        item("LObject"), item("GoodGoalMulti"), item("GoodGoalMulti")});
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto [a, ra] = aai::build_world(spec, seed);
    const auto [b, rb] = aai::build_world(spec, seed);
    ASSERT_EQ(a.objects.size(), b.objects.size());
    for (std::size_t i = 0; i < a.objects.size(); ++i) {
      EXPECT_EQ(a.objects[i].body.position, b.objects[i].body.position);
      EXPECT_EQ(a.objects[i].size, b.objects[i].size);
    }
    EXPECT_EQ(ra.to_json(), rb.to_json());
    EXPECT_FALSE(any_overlap(a)) << seed;
  }
}

TEST(Spawn, ArenaSeedsDiffer) { EXPECT_NE(aai::arena_seed(7, 0), aai::arena_seed(7, 1)); }

TEST(Solvability, OpenArenaIsReachableAndWalledGoalIsNot) {
  const auto open = arena_of({item("Agent", {{5, 0, 5}}), item("GoodGoal", {{35, 0, 35}})});
  const auto [w1, r1] = aai::build_world(open, 1);
  EXPECT_TRUE(aai::reachable(w1, aai::rasterize(w1)));

  auto walls = item("Wall", {{30, 0, 35}, {34.875, 0, 29.75}}, {{0.5, 3, 10}, {10.25, 3, 0.5}});
  const auto boxed = arena_of({item("Agent", {{5, 0, 5}}), item("GoodGoal", {{36, 0, 36}}, {{1, 1, 1}}), walls});
  const auto [w2, r2] = aai::build_world(boxed, 1);
  ASSERT_EQ(r2.placed("Wall"), 2);
  EXPECT_FALSE(aai::reachable(w2, aai::rasterize(w2)));
}
