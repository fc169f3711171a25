#include "aai/world.hpp"

#include <algorithm>

namespace aai {

const PlacedObject* WorldState::find(int id) const {
  for (const auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

PlacedObject* WorldState::find(int id) {
  for (auto& o : objects) {
    if (o.id == id) return &o;
  }
  return nullptr;
}

void WorldState::remove(int id) {
  std::erase_if(objects, [id](const PlacedObject& o) { return o.id == id; });
}

std::size_t WorldState::count(std::string_view name) const {
  return static_cast<std::size_t>(
      std::count_if(objects.begin(), objects.end(), [&](const PlacedObject& o) { return o.name() == name; }));
}

namespace {

ConvexHull slab(double x0, double x1, double y1, double z0, double z1) {
  return ConvexHull::box({(x0 + x1) / 2.0, y1 / 2.0, (z0 + z1) / 2.0}, Mat3{},
                         {(x1 - x0) / 2.0, y1 / 2.0, (z1 - z0) / 2.0});
}

Fence fence(double x0, double x1, double z0, double z1) {
  return {slab(x0, x1, kFenceBarrier, z0, z1), slab(x0, x1, kFenceHeight, z0, z1)};
}

}  // namespace

std::vector<Fence> make_perimeter() {
  const double s = kArenaSize;
  return {fence(-1.0, 0.0, -1.0, s + 1.0), fence(s, s + 1.0, -1.0, s + 1.0), fence(0.0, s, -1.0, 0.0),
          fence(0.0, s, s, s + 1.0)};
}

}  // namespace aai
