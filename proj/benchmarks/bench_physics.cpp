#include <benchmark/benchmark.h>

#include "aai/physics.hpp"
#include "aai/spawn.hpp"

namespace {

aai::ArenaSpec mixed(int copies) {
  aai::ArenaSpec spec;
  for (int i = 0; i < copies; ++i) {
    for (const char* name : {"Wall", "Cardbox1", "Cardbox2", "GoodGoalMove", "LObject", "Ramp"}) {
      aai::ItemSpec it;
      it.name = name;
      spec.items.push_back(it);
    }
  }
  return spec;
}

void BM_StepPhysics(benchmark::State& state) {
  auto world = aai::build_world(mixed(static_cast<int>(state.range(0))), 1).first;
  int i = 0;
  for (auto _ : state) {
    aai::apply_agent_action(world, {1, (i++ / 20) % 3});
    benchmark::DoNotOptimize(aai::step_physics(world));
  }
}

void BM_BuildWorld(benchmark::State& state) {
  const auto spec = mixed(static_cast<int>(state.range(0)));
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(aai::build_world(spec, seed++));
}

}  // namespace

BENCHMARK(BM_StepPhysics)->Arg(1)->Arg(4);
BENCHMARK(BM_BuildWorld)->Arg(1)->Arg(4);

BENCHMARK_MAIN();
