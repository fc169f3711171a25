#include <gtest/gtest.h>

#include <set>

#include "aai/battery.hpp"
#include "aai/config_io.hpp"
#include "aai/solvability.hpp"
#include "aai/taskgen.hpp"
#include "aai/validate.hpp"

namespace {

std::size_t wall_pieces(const aai::ArenaConfigDoc& doc) {
  std::size_t n = 0;
  for (const auto& it : doc.arenas.at(0).items) {
    if (it.name == "Wall") n += it.positions.size();
  }
  return n;
}

}  // namespace

TEST(Taskgen, ParseKinds) {
  int n = 0;
  EXPECT_EQ(aai::parse_maze_kind("4x4", n), aai::MazeKind::kGrid);
  EXPECT_EQ(n, 4);
  EXPECT_EQ(aai::parse_maze_kind("scrambled", n), aai::MazeKind::kScrambled);
  EXPECT_EQ(aai::parse_maze_kind("circular", n), aai::MazeKind::kCircular);
  EXPECT_THROW(aai::parse_maze_kind("9x9", n), std::exception);
  EXPECT_THROW(aai::parse_maze_kind("hex", n), std::exception);
}

TEST(Taskgen, GridWallCounts) {
  EXPECT_EQ(aai::grid_maze_wall_count(2), 4 + 3 + 1);
  for (int n = 2; n <= 8; ++n) {
    const auto doc = aai::gen_grid_maze(n, 3);
    EXPECT_EQ(wall_pieces(doc), static_cast<std::size_t>(aai::grid_maze_wall_count(n))) << n;
    EXPECT_TRUE(aai::validate_config(doc).empty()) << n;
    EXPECT_TRUE(aai::solvability_check(doc, 3)) << n;
  }
  EXPECT_THROW(aai::gen_grid_maze(1, 0), std::invalid_argument);
}

TEST(Taskgen, GeneratorsAreDeterministic) {
  EXPECT_EQ(aai::serialize_config(aai::gen_grid_maze(5, 8)), aai::serialize_config(aai::gen_grid_maze(5, 8)));
  EXPECT_NE(aai::serialize_config(aai::gen_grid_maze(5, 8)), aai::serialize_config(aai::gen_grid_maze(5, 9)));
  EXPECT_EQ(aai::serialize_config(aai::gen_scrambled_maze(2)), aai::serialize_config(aai::gen_scrambled_maze(2)));
  EXPECT_EQ(aai::serialize_config(aai::gen_circular_maze(2)), aai::serialize_config(aai::gen_circular_maze(2)));
}

TEST(Taskgen, ScrambledWallRange) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto doc = aai::gen_scrambled_maze(s);
    const auto n = wall_pieces(doc);
    EXPECT_GE(n, static_cast<std::size_t>(aai::kScrambledMinWalls));
    EXPECT_LE(n, static_cast<std::size_t>(aai::kScrambledMaxWalls));
    EXPECT_TRUE(aai::solvability_check(doc, s)) << s;
  }
}

TEST(Taskgen, CircularGapsAreStaggered) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto g = aai::circular_maze_gaps(s);
    for (int i = 0; i + 1 < aai::kRingCount; ++i) {
      const int d = std::abs(g[i] - g[i + 1]) % aai::kRingSegments;
      EXPECT_GT(std::min(d, aai::kRingSegments - d), 1) << s;
    }
  }
  EXPECT_TRUE(aai::solvability_check(aai::gen_circular_maze(5), 5));
}

TEST(Taskgen, WallCurriculum) {
  EXPECT_EQ(aai::curriculum_wall_count(1), 1);
  EXPECT_EQ(aai::curriculum_wall_count(3), 3);
  EXPECT_EQ(aai::curriculum_wall_count(13), 14);
  EXPECT_THROW(aai::curriculum_wall_count(14), std::invalid_argument);
  for (int level = 1; level <= aai::kCurriculumLevels; ++level) {
    const auto doc = aai::gen_wall_curriculum(level);
    EXPECT_EQ(wall_pieces(doc), static_cast<std::size_t>(aai::curriculum_wall_count(level)));
    EXPECT_FALSE(aai::has_errors(aai::validate_config(doc))) << level;
  }
}

TEST(Battery, TenCategoriesThreeEach) {
  const auto entries = aai::gen_sample_battery(1);
  EXPECT_EQ(entries.size(), 30u);
  std::set<std::string> cats, names;
  for (const auto& e : entries) {
    EXPECT_TRUE(aai::is_battery_category(e.category));
    EXPECT_GE(e.difficulty, 1);
    EXPECT_LE(e.difficulty, 3);
    EXPECT_FALSE(aai::has_errors(aai::validate_config(e.doc))) << e.name;
    cats.insert(e.category);
    names.insert(e.name);
  }
  EXPECT_EQ(cats.size(), 10u);
  EXPECT_EQ(names.size(), 30u);
}

TEST(Battery, ManifestRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "aai_battery_test";
  std::filesystem::remove_all(dir);
  const auto entries = aai::gen_sample_battery(2);
  const auto manifest = aai::write_battery(entries, dir);
  const auto loaded = aai::load_manifest(manifest);
  ASSERT_EQ(loaded.size(), entries.size());
  for (std::size_t i = 0; i < loaded.size(); ++i) {
    EXPECT_EQ(loaded[i].category, entries[i].category);
    EXPECT_EQ(loaded[i].threshold, entries[i].threshold);
    EXPECT_EQ(aai::load_config(loaded[i].config), entries[i].doc);
  }
  std::filesystem::remove_all(dir);
}

TEST(Battery, CategoryRanks) {
  EXPECT_EQ(aai::category_rank("basic-food"), 0);
  EXPECT_EQ(aai::category_rank("causal-reasoning"), 9);
  EXPECT_FALSE(aai::is_battery_category("tool-use"));
}
