#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "erdiff/linearity.hpp"
#include "error_code.hpp"
#include "synthetic.hpp"

namespace erdiff {
namespace {

using testing::code_of;

TEST(F1, ConfusionFormula) {
  EXPECT_DOUBLE_EQ(f1_score(Confusion{2, 2, 2}), 0.5);
  EXPECT_EQ(f1_score(Confusion{0, 3, 4}), 0.0);
  EXPECT_EQ(f1_score(Confusion{}), 0.0);
  EXPECT_DOUBLE_EQ(f1_score(Confusion{5, 0, 0}), 1.0);
}

TEST(F1, PredictedPairSets) {
  std::vector<LabeledPair> labeled{{"a", "1", true}, {"b", "2", true}, {"c", "3", false}, {"d", "4", false}};
  EXPECT_DOUBLE_EQ(f1_score(IdPairSet{{"a", "1"}, {"b", "2"}}, labeled), 1.0);
  EXPECT_EQ(f1_score(IdPairSet{}, labeled), 0.0);
  // 1 TP, 1 FP, 1 FN
  EXPECT_DOUBLE_EQ(f1_score(IdPairSet{{"a", "1"}, {"c", "3"}}, labeled), 0.5);
}

TEST(Threshold, RuleIncludesTheBoundary) {
  std::vector<double> s{0.5, 0.49};
  Labels y{1, 0};
  auto c = confusion_at(s, y, 0.5);
  EXPECT_EQ(c.tp, 1u);
  EXPECT_EQ(c.fp, 0u);
}

TEST(Linearity, SeparableCasePicksSmallestGridPoint) {
  std::vector<double> s{0.9, 0.9, 0.1, 0.1, 0.1};
  Labels y{1, 1, 0, 0, 0};
  auto r = degree_of_linearity(s, y, SimilarityMeasure::CS);
  EXPECT_DOUBLE_EQ(r.f1_max, 1.0);
  EXPECT_DOUBLE_EQ(r.t_best, 0.11);
  ASSERT_EQ(r.curve.size(), 99u);
  EXPECT_DOUBLE_EQ(*std::max_element(r.curve.begin(), r.curve.end()), r.f1_max);
  EXPECT_DOUBLE_EQ(exact_linearity_oracle(s, y, SimilarityMeasure::CS).f1_max, 1.0);
}

TEST(Linearity, IdenticalScoresGiveTheAllMatchF1) {
  std::vector<double> s(10, 1.0);
  Labels y{1, 0, 1, 0, 0, 0, 1, 0, 0, 0};
  auto r = degree_of_linearity(s, y, SimilarityMeasure::JS);
  // P = 3/10, R = 1
  EXPECT_NEAR(r.f1_max, 2 * 0.3 / 1.3, 1e-12);
  EXPECT_DOUBLE_EQ(r.t_best, 0.01);
}

TEST(Linearity, AllZeroF1KeepsTheFirstThreshold) {
  std::vector<double> s{0.0, 0.0};
  Labels y{1, 0};
  auto r = degree_of_linearity(s, y, SimilarityMeasure::CS);
  EXPECT_EQ(r.f1_max, 0.0);
  EXPECT_DOUBLE_EQ(r.t_best, 0.01);
}

TEST(Linearity, NoPositivesIsDegenerate) {
  std::vector<double> s{0.3, 0.4};
  Labels y{0, 0};
  EXPECT_EQ(code_of([&] { degree_of_linearity(s, y, SimilarityMeasure::CS); }), ErrorCode::DegenerateLabels);
  EXPECT_EQ(code_of([&] { exact_linearity_oracle(s, y, SimilarityMeasure::CS); }), ErrorCode::DegenerateLabels);
}

TEST(Linearity, DatasetOverloadMergesAllSplits) {
  Dataset d = testing::synthetic_dataset(60, 3);
  auto merged = d.splits.merged();
  auto scores = pair_similarities(d, merged, SimilarityMeasure::JS);
  auto direct = degree_of_linearity(scores, labels_of(merged), SimilarityMeasure::JS);
  auto viaDataset = degree_of_linearity(d, SimilarityMeasure::JS);
  EXPECT_EQ(viaDataset.f1_max, direct.f1_max);
  EXPECT_EQ(viaDataset.t_best, direct.t_best);
  EXPECT_GE(exact_linearity_oracle(d, SimilarityMeasure::JS).f1_max, viaDataset.f1_max);
  // Noisy duplicates against mostly unrelated negatives separate well.
  EXPECT_GT(viaDataset.f1_max, 0.8);
}

TEST(Linearity, PairSimilaritiesUseAllAttributeTokens) {
  Dataset d;
  d.left = Table("l", {"title", "brand"});
  d.right = Table("r", {"title", "brand"});
  d.left.add({"a", {"x y", "z"}});
  d.right.add({"b", {"x", std::nullopt}});
  std::vector<LabeledPair> p{{"a", "b", true}};
  EXPECT_NEAR(pair_similarities(d, p, SimilarityMeasure::CS)[0], 1.0 / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(pair_similarities(d, p, SimilarityMeasure::JS)[0], 1.0 / 3.0, 1e-12);
}

}  // namespace
}  // namespace erdiff
