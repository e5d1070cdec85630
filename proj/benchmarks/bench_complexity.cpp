#include <benchmark/benchmark.h>

#include "erdiff/complexity.hpp"
#include "erdiff/legacy_random.hpp"

namespace {

using namespace erdiff;

Sample blobs(std::size_t n) {
  LegacyRandom rng(5);
  Sample s;
  s.x = FeatureMatrix(n, 2);
  s.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.y[i] = i % 4 == 0;
    s.x(i, 0) = rng.random_sample() * 0.6 + 0.4 * s.y[i];
    s.x(i, 1) = rng.random_sample() * 0.6 + 0.4 * s.y[i];
  }
  return s;
}

void BM_AllMeasures(benchmark::State& state) {
  auto s = blobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(compute_complexity(s));
}
BENCHMARK(BM_AllMeasures)->Arg(250)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_NetworkMeasures(benchmark::State& state) {
  auto s = blobs(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(network_measures(s));
}
BENCHMARK(BM_NetworkMeasures)->Arg(1000)->Arg(2000)->Unit(benchmark::kMillisecond);

}  // namespace
