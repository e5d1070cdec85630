#include <benchmark/benchmark.h>

#include "erdiff/legacy_random.hpp"
#include "erdiff/linearity.hpp"

namespace {

using namespace erdiff;

void scores(std::size_t n, std::vector<double>& s, Labels& y) {
  LegacyRandom rng(9);
  s.resize(n);
  y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = rng.random_sample();
    y[i] = rng.random_sample() < s[i];
  }
}

void BM_GridSweep(benchmark::State& state) {
  std::vector<double> s;
  Labels y;
  scores(static_cast<std::size_t>(state.range(0)), s, y);
  for (auto _ : state) benchmark::DoNotOptimize(grid_sweep(s, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GridSweep)->Range(1 << 10, 1 << 18)->Complexity();

void BM_GridSweepNaive(benchmark::State& state) {
  std::vector<double> s;
  Labels y;
  scores(static_cast<std::size_t>(state.range(0)), s, y);
  for (auto _ : state) benchmark::DoNotOptimize(grid_sweep_naive(s, y));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GridSweepNaive)->Range(1 << 10, 1 << 18)->Complexity();

}  // namespace
