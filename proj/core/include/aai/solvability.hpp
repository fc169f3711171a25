#pragma once

#include <cstdint>
#include <vector>

#include "aai/types.hpp"
#include "aai/world.hpp"

namespace aai {

/// Ground occupancy on a square lattice over the arena floor.
struct OccupancyGrid {
  double cell = 0.5;
  int n = 80;
  std::vector<std::uint8_t> blocked;

  bool is_blocked(int ix, int iz) const { return blocked[static_cast<std::size_t>(iz) * n + ix] != 0; }
  Vec3 center(int ix, int iz) const { return {(ix + 0.5) * cell, 0.0, (iz + 0.5) * cell}; }
  int index_of(double v) const;
};

/// Obstacles taller than this are impassable.
inline constexpr double kPassableHeight = 0.5;

/// A cell is blocked when an agent-sized sphere at its center strictly
/// overlaps an immovable part taller than kPassableHeight, or when its
/// center lies inside a DeathZone. Ramps and movables never block.
OccupancyGrid rasterize(const WorldState& world, double cell = 0.5);

/// 4-connected search from the agent's cell to any free cell from which the
/// agent would touch a positive goal.
bool reachable(const WorldState& world, const OccupancyGrid& grid);

/// Builds every arena with `seed` and requires each to be solvable.
bool solvability_check(const ArenaConfigDoc& doc, std::uint64_t seed);

}  // namespace aai
