#include <benchmark/benchmark.h>

#include "aai/render.hpp"
#include "aai/spawn.hpp"

namespace {

aai::WorldState cluttered() {
  aai::ArenaSpec spec;
  for (const char* name : {"Wall", "Wall", "Wall", "CylinderTunnel", "Ramp", "GoodGoal", "BadGoal", "GoodGoalMulti",
                           "Cardbox1", "UObject", "HotZone", "WallTransparent"}) {
    aai::ItemSpec it;
    it.name = name;
    spec.items.push_back(it);
  }
  return aai::build_world(spec, 3).first;
}

void BM_Render(benchmark::State& state) {
  const auto world = cluttered();
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(aai::render(world, k));
  state.SetItemsProcessed(state.iterations() * k * k);
}

void BM_FrameHash(benchmark::State& state) {
  const auto frame = aai::render(cluttered(), 84);
  for (auto _ : state) benchmark::DoNotOptimize(aai::frame_hash(frame));
}

}  // namespace

BENCHMARK(BM_Render)->Arg(32)->Arg(84)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FrameHash);

BENCHMARK_MAIN();
