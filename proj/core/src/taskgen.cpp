#include "aai/taskgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "aai/catalog.hpp"
#include "aai/collider.hpp"
#include "aai/geometry.hpp"
#include "aai/rng.hpp"
#include "aai/solvability.hpp"

namespace aai {

MazeKind parse_maze_kind(std::string_view text, int& n) {
  if (text == "scrambled") return MazeKind::kScrambled;
  if (text == "circular") return MazeKind::kCircular;
  if (text.size() == 3 && text[1] == 'x' && text[0] == text[2] && text[0] >= '2' && text[0] <= '8') {
    n = text[0] - '0';
    return MazeKind::kGrid;
  }
  throw std::invalid_argument(fmt::format("unknown maze kind '{}'", text));
}

namespace {

ItemSpec named(std::string name) {
  ItemSpec s;
  s.name = std::move(name);
  return s;
}

void add_wall(ItemSpec& walls, const Vec3& pos, double yaw, const Vec3& size) {
  walls.positions.push_back(pos);
  walls.rotations.push_back(yaw);
  walls.sizes.push_back(size);
}

ArenaConfigDoc single_arena(ArenaSpec spec) {
  ArenaConfigDoc doc;
  doc.arenas.emplace(0, std::move(spec));
  return doc;
}

struct DisjointSet {
  std::vector<int> parent;
  explicit DisjointSet(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<std::size_t>(a)] = b;
    return true;
  }
};

template <typename T>
void shuffle(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
    std::swap(v[i - 1], v[j]);
  }
}

}  // namespace

int grid_maze_wall_count(int n) {
  const int segments = 2 * n * (n - 1);
  const int openings = n * n - 1;
  return segments + openings + (n - 1) * (n - 1);
}

ArenaConfigDoc gen_grid_maze(int n, std::uint64_t seed) {
  if (n < 2 || n > 8) throw std::invalid_argument(fmt::format("grid maze size {} outside [2, 8]", n));
  Rng rng(hash_seed(seed, 0x6d617a65));
  const double c = kArenaSize / n;
  const double h = kMazeWallHeight;
  const double half_t = kGridWallThickness / 2.0;

  struct Edge {
    bool vertical;  // wall on the line x = (i + 1) c
    int i, j;
  };
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) {
    for (int j = 0; j < n; ++j) edges.push_back({true, i, j});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j + 1 < n; ++j) edges.push_back({false, i, j});
  }
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  shuffle(order, rng);
  std::vector<bool> open(edges.size(), false);
  DisjointSet cells(n * n);
  for (std::size_t k : order) {
    const Edge& e = edges[k];
    const int a = e.j * n + e.i;
    const int b = e.vertical ? e.j * n + e.i + 1 : (e.j + 1) * n + e.i;
    if (cells.unite(a, b)) open[k] = true;
  }

  ItemSpec walls = named("Wall");
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const Edge& e = edges[k];
    const double line = ((e.vertical ? e.i : e.j) + 1) * c;
    const int along = e.vertical ? e.j : e.i;
    const double start = along * c + (along > 0 ? half_t : 0.0);
    const double end = (along + 1) * c - (along + 1 < n ? half_t : 0.0);
    std::vector<std::pair<double, double>> pieces;
    if (open[k]) {
      const double offset = rng.uniform(0.25, end - start - kGridGapWidth - 0.25);
      pieces.emplace_back(start, start + offset);
      pieces.emplace_back(start + offset + kGridGapWidth, end);
    } else {
      pieces.emplace_back(start, end);
    }
    for (const auto& [lo, hi] : pieces) {
      const double mid = (lo + hi) / 2.0;
      const double len = hi - lo;
      if (e.vertical) {
        add_wall(walls, {line, 0.0, mid}, 0.0, {kGridWallThickness, h, len});
      } else {
        add_wall(walls, {mid, 0.0, line}, 0.0, {len, h, kGridWallThickness});
      }
    }
  }
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) add_wall(walls, {i * c, 0.0, j * c}, 0.0, {kGridWallThickness, h, kGridWallThickness});
  }

  const auto cells_total = static_cast<std::int64_t>(n) * n;
  const auto agent_cell = rng.uniform_int(0, cells_total - 1);
  auto goal_cell = rng.uniform_int(0, cells_total - 2);
  if (goal_cell >= agent_cell) ++goal_cell;
  auto cell_center = [&](std::int64_t idx) {
    return Vec3{(static_cast<double>(idx % n) + 0.5) * c, 0.0, (static_cast<double>(idx / n) + 0.5) * c};
  };

  ItemSpec goal = named("GoodGoal");
  goal.positions.push_back(cell_center(goal_cell));
  goal.sizes.push_back({2.0, 2.0, 2.0});
  ItemSpec agent = named("Agent");
  agent.positions.push_back(cell_center(agent_cell));
  agent.rotations.push_back(std::floor(rng.uniform(0.0, 360.0)));

  ArenaSpec spec;
  spec.t = 200 + 100 * n;
  spec.items = {std::move(walls), std::move(goal), std::move(agent)};
  return single_arena(std::move(spec));
}

ArenaConfigDoc gen_scrambled_maze(std::uint64_t seed) {
  const CatalogEntry& wall_entry = catalog_lookup("Wall");
  for (int attempt = 0; attempt < kScrambledResamples; ++attempt) {
    Rng rng(hash_seed(seed, static_cast<std::uint64_t>(attempt)));
    const Vec3 agent_pos{rng.uniform(2.0, 38.0), 0.0, rng.uniform(2.0, 38.0)};
    Vec3 goal_pos;
    do {
      goal_pos = {rng.uniform(2.0, 38.0), 0.0, rng.uniform(2.0, 38.0)};
    } while (length(goal_pos - agent_pos) < 15.0);
    const Collider agent_c = Collider::sphere(agent_pos + Vec3{0.0, kAgentRadius * 2.0, 0.0}, kAgentRadius * 2.0);
    const Collider goal_c = Collider::sphere(goal_pos + Vec3{0.0, 1.0, 0.0}, 1.5);

    const auto count = static_cast<int>(rng.uniform_int(kScrambledMinWalls, kScrambledMaxWalls));
    ItemSpec walls = named("Wall");
    std::vector<Collider> placed;
    for (int tries = 0; static_cast<int>(placed.size()) < count && tries < 500; ++tries) {
      const Vec3 pos{std::round(rng.uniform(3.0, 37.0) * 10.0) / 10.0, 0.0, std::round(rng.uniform(3.0, 37.0) * 10.0) / 10.0};
      const double yaw = std::floor(rng.uniform(0.0, 180.0));
      const Vec3 size{std::round(rng.uniform(4.0, 10.0) * 10.0) / 10.0, kMazeWallHeight, 0.5};
      Collider c = make_object_collider(wall_entry, pos, yaw, size);
      if (c.bounds.lo.x < 0.0 || c.bounds.hi.x > kArenaSize || c.bounds.lo.z < 0.0 || c.bounds.hi.z > kArenaSize) continue;
      if (overlap_test(c, agent_c) || overlap_test(c, goal_c)) continue;
      if (std::any_of(placed.begin(), placed.end(), [&](const Collider& o) { return overlap_test(o, c); })) continue;
      placed.push_back(std::move(c));
      add_wall(walls, pos, yaw, size);
    }
    if (static_cast<int>(placed.size()) < count) continue;

    ItemSpec goal = named("GoodGoal");
    goal.positions.push_back(goal_pos);
    goal.sizes.push_back({2.0, 2.0, 2.0});
    ItemSpec agent = named("Agent");
    agent.positions.push_back(agent_pos);
    agent.rotations.push_back(std::floor(rng.uniform(0.0, 360.0)));

    ArenaSpec spec;
    spec.t = 1000;
    spec.items = {std::move(walls), std::move(goal), std::move(agent)};
    ArenaConfigDoc doc = single_arena(std::move(spec));
    if (solvability_check(doc, seed)) return doc;
  }
  throw GenerationError(fmt::format("no solvable scrambled maze after {} resamples (seed {})", kScrambledResamples, seed));
}

std::array<int, kRingCount> circular_maze_gaps(std::uint64_t seed) {
  Rng rng(hash_seed(seed, 0x63697263));
  std::array<int, kRingCount> gaps{};
  for (int r = 0; r < kRingCount; ++r) {
    for (;;) {
      const int g = static_cast<int>(rng.uniform_int(0, kRingSegments - 1));
      bool clear = true;
      for (int q = 0; q < r; ++q) {
        const int d = std::abs(g - gaps[static_cast<std::size_t>(q)]);
        if (std::min(d, kRingSegments - d) < 2) clear = false;
      }
      if (clear) {
        gaps[static_cast<std::size_t>(r)] = g;
        break;
      }
    }
  }
  return gaps;
}

ArenaConfigDoc gen_circular_maze(std::uint64_t seed) {
  const auto gaps = circular_maze_gaps(seed);
  Rng rng(hash_seed(seed, 0x61676e74));
  const double centre = kArenaSize / 2.0;
  const double sector = 360.0 / kRingSegments;
  ItemSpec walls = named("Wall");
  for (int r = 0; r < kRingCount; ++r) {
    const double rc = kRingRadii[static_cast<std::size_t>(r)];
    const double chord = 2.0 * (rc - kRingThickness / 2.0) * std::tan(deg_to_rad(sector / 2.0));
    for (int j = 0; j < kRingSegments; ++j) {
      if (j == gaps[static_cast<std::size_t>(r)]) continue;
      const double theta = (j + 0.5) * sector;
      const Vec3 dir = heading_vector(theta);
      add_wall(walls, {centre + rc * dir.x, 0.0, centre + rc * dir.z}, theta, {chord, kMazeWallHeight, kRingThickness});
    }
  }
  ItemSpec goal = named("GoodGoal");
  goal.positions.push_back({centre, 0.0, centre});
  goal.sizes.push_back({2.0, 2.0, 2.0});

  constexpr std::array<std::array<double, 2>, 4> corners = {{{2.0, 2.0}, {2.0, 38.0}, {38.0, 2.0}, {38.0, 38.0}}};
  const auto& corner = corners[static_cast<std::size_t>(rng.uniform_int(0, 3))];
  ItemSpec agent = named("Agent");
  agent.positions.push_back({corner[0], 0.0, corner[1]});
  agent.rotations.push_back(std::floor(rng.uniform(0.0, 360.0)));

  ArenaSpec spec;
  spec.t = 1000;
  spec.items = {std::move(walls), std::move(goal), std::move(agent)};
  return single_arena(std::move(spec));
}

int curriculum_wall_count(int level) {
  if (level < 1 || level > kCurriculumLevels) throw std::invalid_argument(fmt::format("curriculum level {} outside [1, {}]", level, kCurriculumLevels));
  return level == kCurriculumLevels ? 14 : level;
}

ArenaConfigDoc gen_wall_curriculum(int level) {
  const int walls_n = curriculum_wall_count(level);
  const Vec3 wall_size{1.0, 5.0, 9.0};
  ItemSpec goal = named("GoodGoal");
  goal.sizes.push_back({2.0, 2.0, 2.0});
  ItemSpec walls = named("Wall");
  ArenaSpec spec;

  if (level <= 3) {
    for (int k = 0; k < walls_n; ++k) add_wall(walls, {kRandom, 0.0, 10.0 * (k + 1)}, 90.0, wall_size);
    goal.positions.push_back({kRandom, 0.0, 35.0});
    ItemSpec agent = named("Agent");
    agent.positions.push_back({kRandom, 1.0, 5.0});
    spec.t = 250 + 75 * (level - 1);
    spec.items = {std::move(walls), std::move(goal), std::move(agent)};
    return single_arena(std::move(spec));
  }

  std::vector<std::pair<Vec3, double>> pattern;
  for (int k = 1; k <= 7; ++k) pattern.push_back({{kRandom, 0.0, 5.0 * k}, 90.0});
  for (int k = 1; k <= 7; ++k) pattern.push_back({{5.0 * k, 0.0, kRandom}, 0.0});
  for (int k = 0; k < walls_n; ++k) add_wall(walls, pattern[static_cast<std::size_t>(k)].first, pattern[static_cast<std::size_t>(k)].second, wall_size);
  spec.t = 500;
  spec.items = {std::move(goal), std::move(walls)};
  return single_arena(std::move(spec));
}

}  // namespace aai
