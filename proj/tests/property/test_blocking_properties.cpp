#include <gtest/gtest.h>

#include <algorithm>

#include "erdiff/benchgen.hpp"
#include "erdiff/blocking.hpp"
#include "erdiff/legacy_random.hpp"
#include "synthetic.hpp"

namespace erdiff {
namespace {

testing::SyntheticSources sources(std::uint32_t seed) {
  testing::SyntheticOptions o;
  o.records = 25;
  o.extra_right = seed % 7;
  o.seed = seed;
  o.vocabulary = 50;
  o.typo_rate = 0.3;
  return testing::synthetic_sources(o);
}

TEST(BlockingProperties, CandidateSetsNestInKAndRecallIsMonotone) {
  for (std::uint32_t seed = 1; seed <= 12; ++seed) {
    auto src = sources(seed);
    for (const auto& config : ConfigSpace::defaults(src.left, src.right).combinations()) {
      auto ranking = rank_records(src.left, src.right, config);
      std::vector<IdPair> previous;
      double previous_pc = 0;
      for (std::size_t k = 1; k <= ranking.index_count(); ++k) {
        auto current = ranking.candidates(k);
        ASSERT_TRUE(std::includes(current.begin(), current.end(), previous.begin(), previous.end()));
        ASSERT_EQ(current.size(), ranking.candidate_count(k));
        auto pc = evaluate_blocking(current, src.gold).pc;
        ASSERT_GE(pc, previous_pc);
        previous = std::move(current);
        previous_pc = pc;
      }
      ASSERT_DOUBLE_EQ(previous_pc, 1.0);
    }
  }
}

TEST(BlockingProperties, EachQueryGetsMinKDistinctIndexRecords) {
  for (std::uint32_t seed = 20; seed < 26; ++seed) {
    auto src = sources(seed);
    BlockerConfig config;
    config.indexed = seed % 2 ? Side::Left : Side::Right;
    auto ranking = rank_records(src.left, src.right, config);
    for (std::size_t k : {std::size_t{1}, std::size_t{3}, ranking.index_count() + 2}) {
      for (std::size_t q = 0; q < ranking.query_count(); ++q) {
        auto top = ranking.top(q, k);
        ASSERT_EQ(top.size(), std::min(k, ranking.index_count()));
        auto sorted = top;
        std::sort(sorted.begin(), sorted.end());
        ASSERT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
        for (std::size_t r = 1; r < top.size(); ++r) ASSERT_GE(ranking.score(q, top[r - 1]), ranking.score(q, top[r]));
      }
    }
  }
}

TEST(BlockingProperties, GridWinnerIsNoLargerThanAnyQualifyingEntry) {
  for (std::uint32_t seed = 40; seed < 46; ++seed) {
    auto src = sources(seed);
    auto result = grid_search(src.left, src.right, src.gold, 0.9);
    ASSERT_GE(result.outcome.pc, 0.9);
    for (const auto& e : result.entries) {
      if (!e.k) continue;
      ASSERT_GE(e.candidate_count, result.outcome.candidate_count);
      ASSERT_GE(e.pc, 0.9);
    }
  }
}

TEST(BlockingProperties, SplitsPartitionCandidatesWithinOneOfTheRatio) {
  LegacyRandom rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 5 + rng.below(400);
    std::vector<IdPair> pairs;
    GroundTruth gold;
    for (std::size_t i = 0; i < n; ++i) {
      pairs.emplace_back("l" + std::to_string(i), "r" + std::to_string(rng.below(50)));
      if (rng.below(4) == 0) gold.insert(pairs.back());
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    if (pairs.size() < 5) continue;
    auto seed = static_cast<std::uint32_t>(rng.below(1000));
    auto a = split_candidates(pairs, gold, seed);
    auto b = split_candidates(pairs, gold, seed);
    ASSERT_EQ(a.train, b.train);
    ASSERT_EQ(a.validation, b.validation);
    ASSERT_EQ(a.test, b.test);
    const double m = static_cast<double>(pairs.size());
    ASSERT_NEAR(static_cast<double>(a.train.size()), 0.6 * m, 1.0);
    ASSERT_NEAR(static_cast<double>(a.validation.size()), 0.2 * m, 1.0);
    ASSERT_NEAR(static_cast<double>(a.test.size()), 0.2 * m, 1.0);
    ASSERT_EQ(a.merged().size(), pairs.size());
  }
}

}  // namespace
}  // namespace erdiff
