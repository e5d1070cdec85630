#include <gtest/gtest.h>

#include <cmath>

#include "erdiff/features.hpp"
#include "erdiff/legacy_random.hpp"

namespace erdiff {
namespace {

TokenSet random_set(LegacyRandom& rng, std::size_t alphabet) {
  std::vector<std::string> items;
  std::size_t n = rng.below(12);
  for (std::size_t i = 0; i < n; ++i) items.push_back("t" + std::to_string(rng.below(alphabet)));
  return make_token_set(std::move(items));
}

TEST(SimilarityProperties, BoundsSymmetryAndDiceJaccardIdentity) {
  LegacyRandom rng(2024);
  for (int trial = 0; trial < 12000; ++trial) {
    auto a = random_set(rng, 15);
    auto b = random_set(rng, 15);
    double cs = cosine(a, b), js = jaccard(a, b), ds = dice(a, b);
    for (double v : {cs, js, ds}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    ASSERT_EQ(cs, cosine(b, a));
    ASSERT_EQ(js, jaccard(b, a));
    ASSERT_EQ(ds, dice(b, a));
    ASSERT_NEAR(ds, 2 * js / (1 + js), 1e-12);
    // Jaccard never exceeds Dice, which never exceeds cosine.
    ASSERT_LE(js, ds + 1e-12);
    ASSERT_LE(ds, cs + 1e-12);
    if (!a.empty()) {
      ASSERT_DOUBLE_EQ(cosine(a, a), 1.0);
      ASSERT_DOUBLE_EQ(jaccard(a, a), 1.0);
    }
    if (intersection_size(a, b) == 0) ASSERT_EQ(cs, 0.0);
  }
}

TEST(SimilarityProperties, TokenizationIsOrderAndDuplicateInsensitive) {
  LegacyRandom rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::string> words;
    std::size_t n = 1 + rng.below(8);
    for (std::size_t i = 0; i < n; ++i) words.push_back("W" + std::to_string(rng.below(6)));
    std::string forward, backward;
    for (std::size_t i = 0; i < n; ++i) {
      forward += words[i] + " ";
      backward += words[n - 1 - i] + "  " + words[n - 1 - i] + "\t";
    }
    ASSERT_EQ(tokenize(forward), tokenize(backward));
  }
}

TEST(SimilarityProperties, QGramsOfLongerTextsCoverShorterQ) {
  LegacyRandom rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::string text;
    std::size_t len = rng.below(20);
    for (std::size_t i = 0; i < len; ++i) text.push_back(static_cast<char>('a' + rng.below(4)));
    for (int q = 2; q <= 10; ++q) {
      auto grams = qgram_set(text, q);
      std::size_t max_count = len >= static_cast<std::size_t>(q) ? len - q + 1 : 0;
      ASSERT_LE(grams.size(), max_count);
      for (const auto& g : grams) ASSERT_EQ(g.size(), static_cast<std::size_t>(q));
    }
  }
}

TEST(SimilarityProperties, EmbeddingSimilaritiesBoundedAndSymmetric) {
  LegacyRandom rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    std::size_t d = 1 + rng.below(6);
    std::vector<double> a(d), b(d);
    for (auto& v : a) v = rng.random_sample() * 4 - 2;
    for (auto& v : b) v = rng.random_sample() * 4 - 2;
    auto ab = embedding_sims(a, b), ba = embedding_sims(b, a);
    for (double v : {ab.cs, ab.es, ab.ws}) {
      ASSERT_GE(v, 0.0);
      ASSERT_LE(v, 1.0);
    }
    ASSERT_NEAR(ab.cs, ba.cs, 1e-12);
    ASSERT_EQ(ab.es, ba.es);
    ASSERT_EQ(ab.ws, ba.ws);
  }
}

}  // namespace
}  // namespace erdiff
