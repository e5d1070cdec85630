#include <benchmark/benchmark.h>

#include "erdiff/blocking.hpp"
#include "erdiff/legacy_random.hpp"

namespace {

using namespace erdiff;

struct Sources {
  Table left{"l", {"title", "brand"}};
  Table right{"r", {"title", "brand"}};
  GroundTruth gold;
};

Sources sources(std::size_t n) {
  LegacyRandom rng(17);
  Sources s;
  for (std::size_t i = 0; i < n; ++i) {
    std::string title;
    for (int w = 0; w < 5; ++w) title += "w" + std::to_string(rng.below(5 * n)) + " ";
    std::string brand = "b" + std::to_string(rng.below(40));
    s.left.add({"a" + std::to_string(i), {title, brand}});
    s.right.add({"b" + std::to_string(i), {title + "extra", brand}});
    s.gold.insert({"a" + std::to_string(i), "b" + std::to_string(i)});
  }
  return s;
}

void BM_Rank(benchmark::State& state) {
  auto s = sources(static_cast<std::size_t>(state.range(0)));
  BlockerConfig config;
  for (auto _ : state) benchmark::DoNotOptimize(rank_records(s.left, s.right, config));
}
BENCHMARK(BM_Rank)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_GridSearch(benchmark::State& state) {
  auto s = sources(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(grid_search(s.left, s.right, s.gold, 0.9));
}
BENCHMARK(BM_GridSearch)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
