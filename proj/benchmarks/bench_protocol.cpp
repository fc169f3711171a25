#include <benchmark/benchmark.h>

#include "aai/protocol.hpp"

namespace {

aai::Message observation(int k) {
  aai::ObservationBundle o;
  o.frame = aai::black_frame(k);
  return aai::make_observation(1, {{0, o}});
}

void BM_EncodeObservation(benchmark::State& state) {
  const auto m = observation(static_cast<int>(state.range(0)));
  const auto enc = state.range(1) ? aai::BlobEncoding::kBase64 : aai::BlobEncoding::kBinary;
  for (auto _ : state) benchmark::DoNotOptimize(aai::encode_message(m, enc));
}

void BM_DecodeObservation(benchmark::State& state) {
  const auto wire = aai::encode_message(observation(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(aai::parse_observation(aai::decode_message(wire)));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(wire.size()));
}

}  // namespace

BENCHMARK(BM_EncodeObservation)->Args({84, 0})->Args({84, 1})->Args({256, 0});
BENCHMARK(BM_DecodeObservation)->Arg(84)->Arg(256);

BENCHMARK_MAIN();
