#include <benchmark/benchmark.h>

#include "erdiff/features.hpp"
#include "erdiff/legacy_random.hpp"

namespace {

using namespace erdiff;

std::vector<TokenSet> random_sets(std::size_t count, std::size_t size, std::uint32_t seed) {
  LegacyRandom rng(seed);
  std::vector<TokenSet> out;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::string> items;
    for (std::size_t j = 0; j < size; ++j) items.push_back("w" + std::to_string(rng.below(4 * size)));
    out.push_back(make_token_set(std::move(items)));
  }
  return out;
}

void BM_Jaccard(benchmark::State& state) {
  auto sets = random_sets(256, static_cast<std::size_t>(state.range(0)), 1);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(jaccard(sets[i % 256], sets[(i + 1) % 256]));
    ++i;
  }
}
BENCHMARK(BM_Jaccard)->Arg(8)->Arg(64)->Arg(512);

void BM_QGrams(benchmark::State& state) {
  std::string text(static_cast<std::size_t>(state.range(0)), 'a');
  for (std::size_t i = 0; i < text.size(); ++i) text[i] = static_cast<char>('a' + (i * 7) % 26);
  for (auto _ : state) benchmark::DoNotOptimize(qgram_set(text, 3));
}
BENCHMARK(BM_QGrams)->Arg(32)->Arg(256);

void BM_SaqFeatures(benchmark::State& state) {
  Table left("l", {"title"}), right("r", {"title"});
  LegacyRandom rng(3);
  std::vector<LabeledPair> pairs;
  for (int i = 0; i < 200; ++i) {
    std::string t;
    for (int w = 0; w < 6; ++w) t += "tok" + std::to_string(rng.below(300)) + " ";
    left.add({"a" + std::to_string(i), {t}});
    right.add({"b" + std::to_string(i), {t}});
    pairs.push_back({"a" + std::to_string(i), "b" + std::to_string(rng.below(200)), false});
  }
  FeatureScheme scheme;
  scheme.tag = SchemeTag::SAQ;
  for (auto _ : state) {
    FeatureExtractor fx(left, right, scheme);
    benchmark::DoNotOptimize(fx.extract_all(pairs));
  }
}
BENCHMARK(BM_SaqFeatures)->Unit(benchmark::kMillisecond);

}  // namespace
