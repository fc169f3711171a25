#include "aai/solvability.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "aai/spawn.hpp"

namespace aai {

int OccupancyGrid::index_of(double v) const {
  return std::clamp(static_cast<int>(std::floor(v / cell)), 0, n - 1);
}

namespace {

void block_hull(OccupancyGrid& g, const ConvexHull& hull) {
  if (hull.bounds().hi.y <= kPassableHeight) return;
  const Vec3 lo = hull.bounds().lo;
  const Vec3 hi = hull.bounds().hi;
  const int x0 = g.index_of(lo.x - kAgentRadius);
  const int x1 = g.index_of(hi.x + kAgentRadius);
  const int z0 = g.index_of(lo.z - kAgentRadius);
  const int z1 = g.index_of(hi.z + kAgentRadius);
  for (int iz = z0; iz <= z1; ++iz) {
    for (int ix = x0; ix <= x1; ++ix) {
      auto& cell = g.blocked[static_cast<std::size_t>(iz) * g.n + ix];
      if (cell) continue;
      const Vec3 c = g.center(ix, iz) + Vec3{0.0, kAgentRadius, 0.0};
      if (hull.signed_distance(c) < kAgentRadius - kContactEpsilon) cell = 1;
    }
  }
}

}  // namespace

OccupancyGrid rasterize(const WorldState& world, double cell) {
  OccupancyGrid g;
  g.cell = cell;
  g.n = static_cast<int>(std::lround(kArenaSize / cell));
  g.blocked.assign(static_cast<std::size_t>(g.n) * g.n, 0);
  for (const auto& f : world.fences) block_hull(g, f.barrier);
  for (const auto& o : world.objects) {
    if (o.entry->object_class == ObjectClass::kImmovable && o.entry->shape != ColliderShape::kWedge) {
      for (const auto& part : o.collider.parts) block_hull(g, part);
    }
    if (o.entry->is_zone() && o.entry->reward == RewardRule::kDeath) {
      for (int iz = 0; iz < g.n; ++iz) {
        for (int ix = 0; ix < g.n; ++ix) {
          const Vec3 c = g.center(ix, iz);
          if (point_in_rect(c.x, c.z, o.body.position, o.body.yaw, o.size.x / 2.0, o.size.z / 2.0)) {
            g.blocked[static_cast<std::size_t>(iz) * g.n + ix] = 1;
          }
        }
      }
    }
  }
  return g;
}

bool reachable(const WorldState& world, const OccupancyGrid& g) {
  std::vector<std::uint8_t> target(g.blocked.size(), 0);
  bool any_goal = false;
  for (const auto& o : world.objects) {
    if (!o.entry->is_sphere()) continue;
    if (o.entry->reward != RewardRule::kGood && o.entry->reward != RewardRule::kMulti) continue;
    any_goal = true;
    const double reach = o.radius() + kAgentRadius;
    const Vec3 gc = o.collider.center;
    for (int iz = 0; iz < g.n; ++iz) {
      for (int ix = 0; ix < g.n; ++ix) {
        const Vec3 c = g.center(ix, iz) + Vec3{0.0, kAgentRadius, 0.0};
        if (length(c - gc) <= reach + 1e-9) target[static_cast<std::size_t>(iz) * g.n + ix] = 1;
      }
    }
  }
  if (!any_goal) return false;

  const Vec3 a = world.agent.body.position;
  const int sx = g.index_of(a.x);
  const int sz = g.index_of(a.z);
  std::vector<std::uint8_t> seen(g.blocked.size(), 0);
  std::deque<std::pair<int, int>> queue;
  queue.emplace_back(sx, sz);
  seen[static_cast<std::size_t>(sz) * g.n + sx] = 1;
  constexpr int dx[4] = {1, -1, 0, 0};
  constexpr int dz[4] = {0, 0, 1, -1};
  while (!queue.empty()) {
    const auto [x, z] = queue.front();
    queue.pop_front();
    const std::size_t i = static_cast<std::size_t>(z) * g.n + x;
    if (target[i] && !g.blocked[i]) return true;
    for (int k = 0; k < 4; ++k) {
      const int nx = x + dx[k];
      const int nz = z + dz[k];
      if (nx < 0 || nz < 0 || nx >= g.n || nz >= g.n) continue;
      const std::size_t j = static_cast<std::size_t>(nz) * g.n + nx;
      if (seen[j] || g.blocked[j]) continue;
      seen[j] = 1;
      queue.emplace_back(nx, nz);
    }
  }
  return false;
}

bool solvability_check(const ArenaConfigDoc& doc, std::uint64_t seed) {
  for (const auto& [index, spec] : doc.arenas) {
    const auto [world, report] = build_world(spec, arena_seed(seed, index));
    if (!reachable(world, rasterize(world))) return false;
  }
  return true;
}

}  // namespace aai
