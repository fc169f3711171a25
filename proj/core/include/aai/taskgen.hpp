#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "aai/types.hpp"

namespace aai {

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MazeKind { kGrid, kScrambled, kCircular };

/// Parses "2x2".."8x8", "scrambled" or "circular"; `n` is set for grids.
MazeKind parse_maze_kind(std::string_view text, int& n);

inline constexpr double kMazeWallHeight = 2.0;
inline constexpr double kGridWallThickness = 1.0;
inline constexpr double kGridGapWidth = 2.0;

/// n x n cells, interior walls cut by spanning-tree openings, posts at the
/// interior lattice points. Requires 2 <= n <= 8.
ArenaConfigDoc gen_grid_maze(int n, std::uint64_t seed);

/// Wall pieces emitted by gen_grid_maze: every interior segment gives one
/// piece, opened segments one more, plus (n - 1)^2 posts.
int grid_maze_wall_count(int n);

inline constexpr int kScrambledMinWalls = 12;
inline constexpr int kScrambledMaxWalls = 20;
inline constexpr int kScrambledResamples = 50;

ArenaConfigDoc gen_scrambled_maze(std::uint64_t seed);

inline constexpr int kRingCount = 3;
inline constexpr int kRingSegments = 24;
inline constexpr std::array<double, kRingCount> kRingRadii = {8.0, 13.0, 18.0};
inline constexpr double kRingThickness = 0.5;

/// Segment index left open on each ring, innermost first. No two rings
/// share or neighbour the same angular sector.
std::array<int, kRingCount> circular_maze_gaps(std::uint64_t seed);

ArenaConfigDoc gen_circular_maze(std::uint64_t seed);

inline constexpr int kCurriculumLevels = 13;

int curriculum_wall_count(int level);

/// Level 1 is the single-wall layout, level 3 the three-wall one and
/// level 13 the full fourteen-wall grid.
ArenaConfigDoc gen_wall_curriculum(int level);

}  // namespace aai
