#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "aai/raycast.hpp"
#include "aai/render.hpp"
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

aai::WorldState world_of(std::vector<aai::ItemSpec> items, std::uint64_t seed = 1) {
  aai::ArenaSpec a;
  a.items = std::move(items);
  auto [w, r] = aai::build_world(a, seed);
  return std::move(w);
}

// Distance bound to every opaque surface in a world without arches.
double scene_sdf(const aai::WorldState& w, const aai::Vec3& p) {
  double d = p.y;
  for (const auto& f : w.fences) d = std::min(d, f.visible.signed_distance(p));
  for (const auto& o : w.objects) {
    if (o.entry->is_zone()) continue;
    if (o.collider.kind == aai::Collider::Kind::kSphere) {
      d = std::min(d, aai::length(p - o.collider.center) - o.collider.radius);
    } else {
      for (const auto& h : o.collider.parts) d = std::min(d, h.signed_distance(p));
    }
  }
  return d;
}

std::optional<double> sphere_trace(const aai::WorldState& w, const aai::Vec3& o, const aai::Vec3& dir) {
  double t = 0.0;
  for (int i = 0; i < 100000 && t < 200.0; ++i) {
    const double d = scene_sdf(w, o + dir * t);
    if (d < 1e-7) return t;
    t += d;
  }
  return std::nullopt;
}

}  // namespace

TEST(Render, ResolutionBounds) {
  EXPECT_THROW(aai::check_resolution(3), aai::ResolutionError);
  EXPECT_THROW(aai::check_resolution(513), aai::ResolutionError);
  EXPECT_NO_THROW(aai::check_resolution(4));
  EXPECT_NO_THROW(aai::check_resolution(512));
}

TEST(Render, BlackFrameIsAllZeroAndRenderedFrameIsNot) {
  const auto w = world_of({item("Agent", {{20, 0, 20}})});
  EXPECT_TRUE(aai::black_frame(16).all_zero());
  const auto f = aai::render(w, 16);
  EXPECT_EQ(f.pixels.size(), 16u * 16u * 3u);
  EXPECT_FALSE(f.all_zero());
  for (auto v : f.pixels) EXPECT_GE(v, 1);
}

TEST(Render, SkyAboveGroundBelow) {
  const auto w = world_of({item("Agent", {{20, 0, 2}}, {}, {0})});
  const auto f = aai::render(w, 32);
  const auto sky = f.at(0, 16);
  EXPECT_EQ(sky[0], aai::kSkyColor.r);
  EXPECT_EQ(sky[2], aai::kSkyColor.b);
  const auto ground = f.at(31, 16);
  EXPECT_NEAR(ground[0], ground[1], 12);
}

TEST(Render, GoalInFrontFillsTheCenter) {
  const auto w = world_of({item("Agent", {{20, 0, 10}}, {}, {0}), item("GoodGoal", {{20, 0, 14}}, {{2, 2, 2}})});
  const auto f = aai::render(w, 32);
  const auto c = f.at(16, 16);
  EXPECT_GT(c[1], 2 * c[0]);
  EXPECT_GT(c[1], 2 * c[2]);
}

TEST(Render, TransparentWallBlendsTint) {
  auto glass = item("WallTransparent", {{20, 0, 14}}, {{10, 5, 0.5}});
  const auto w = world_of({item("Agent", {{20, 0, 10}}, {}, {0}), glass});
  const auto plain = world_of({item("Agent", {{20, 0, 10}}, {}, {0})});
  const auto a = aai::render(w, 16).at(4, 8);
  const auto b = aai::render(plain, 16).at(4, 8);
  EXPECT_NE(a, b);
}

TEST(Render, DeterministicHash) {
  const auto w = world_of({item("Wall"), item("GoodGoal"), item("CylinderTunnel"), item("Ramp")}, 4);
  EXPECT_EQ(aai::frame_hash(aai::render(w, 84)), aai::frame_hash(aai::render(w, 84)));
  EXPECT_NE(aai::frame_hash(aai::render(w, 84)), aai::frame_hash(aai::black_frame(84)));
}

TEST(Render, PngSignature) {
  const auto png = aai::encode_png(aai::black_frame(8));
  ASSERT_GT(png.size(), 8u);
  const std::uint8_t sig[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  EXPECT_TRUE(std::equal(sig, sig + 8, png.begin()));
}

TEST(Render, LocalVelocityIsForwardRightUp) {
  aai::BodyState b;
  b.yaw = 90;
  b.velocity = {2, 1, 0};
  const auto v = aai::local_velocity(b);
  EXPECT_NEAR(v.x, 2, 1e-12);
  EXPECT_NEAR(v.y, 0, 1e-12);
  EXPECT_NEAR(v.z, 1, 1e-12);
}

TEST(Raycast, AgreesWithSphereTracing) {
  const auto w = world_of({item("Agent", {{20, 0, 20}}), item("Wall"), item("Wall"), item("Cardbox1"), item("Ramp"),
                           item("GoodGoal"), item("BadGoal"), item("UObject"), item("LObject")},
                          17);
  aai::Rng rng(99);
  int compared = 0;
  for (int i = 0; i < 400; ++i) {
    const aai::Vec3 o{rng.uniform(2, 38), rng.uniform(0.2, 4), rng.uniform(2, 38)};
    if (scene_sdf(w, o) < 0.05) continue;
    const aai::Vec3 d = aai::normalized({rng.uniform(-1, 1), rng.uniform(-0.6, 0.4), rng.uniform(-1, 1)});
    const auto hit = aai::raycast(w, o, d);
    const auto traced = sphere_trace(w, o, d);
    if (!traced) {
      EXPECT_FALSE(hit) << i;
      continue;
    }
    ASSERT_TRUE(hit) << i;
    EXPECT_NEAR(hit->distance, *traced, 1e-5) << i;
    ++compared;
  }
  EXPECT_GT(compared, 200);
}
