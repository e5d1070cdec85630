#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>

#include "erdiff/complexity.hpp"
#include "erdiff/csv.hpp"
#include "error_code.hpp"
#include "synthetic.hpp"

namespace erdiff {
namespace {

using testing::code_of;

Sample load_fixture(const std::string& name) {
  auto rows = csv::read_file(testing::fixture_dir() / ("complexity_" + name + ".csv"));
  Sample s;
  s.x = FeatureMatrix(rows.size() - 1, 2);
  s.y.resize(rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    s.x(i - 1, 0) = std::stod(rows[i][0].text);
    s.x(i - 1, 1) = std::stod(rows[i][1].text);
    s.y[i - 1] = rows[i][2].text == "1";
  }
  s.dataset = name;
  return s;
}

nlohmann::json golden() {
  std::ifstream in(testing::fixture_dir() / "complexity_golden.json");
  return nlohmann::json::parse(in);
}

// Measures that depend on an iterative solver or on random splits get a
// looser bound than the closed-form ones.
double tolerance(std::string_view measure) {
  return measure == "l1" || measure == "l2" || measure == "n4" ? 0.02 : 1e-6;
}

class GoldenComplexity : public ::testing::TestWithParam<std::string> {};

TEST_P(GoldenComplexity, MatchesReferenceValues) {
  auto ref = golden()[GetParam()];
  Sample s = load_fixture(GetParam());
  ComplexityOptions o;
  o.seed = ref["seed"].get<std::uint32_t>();
  auto report = compute_complexity(s, o);
  EXPECT_EQ(report.pairs, s.size());
  for (std::size_t k = 0; k < kMeasureCount; ++k) {
    std::string name(kMeasureNames[k]);
    EXPECT_NEAR(report.values[k], ref["measures"][name].get<double>(), tolerance(name)) << GetParam() << " " << name;
  }
}

INSTANTIATE_TEST_SUITE_P(Fixtures, GoldenComplexity,
                         ::testing::Values("blobs_50", "blobs_200", "blobs_500", "imbalanced_200", "overlap_500"));

TEST(Complexity, EveryMeasureStaysInUnitInterval) {
  for (const auto& name : {"blobs_200", "imbalanced_200", "overlap_500"}) {
    auto r = compute_complexity(load_fixture(name));
    for (std::size_t k = 0; k < kMeasureCount; ++k) {
      EXPECT_GE(r.values[k], 0.0) << name << " " << kMeasureNames[k];
      EXPECT_LE(r.values[k], 1.0) << name << " " << kMeasureNames[k];
    }
  }
}

TEST(Complexity, OverlapIsHarderThanSeparatedBlobs) {
  auto easy = compute_complexity(load_fixture("blobs_500"));
  auto hard = compute_complexity(load_fixture("overlap_500"));
  EXPECT_LT(easy.mean(), hard.mean());
  EXPECT_GT(hard.value("n3"), easy.value("n3"));
}

TEST(Complexity, MeanAndVerdict) {
  ComplexityReport r;
  r.values.fill(0.3);
  EXPECT_DOUBLE_EQ(r.mean(), 0.3);
  EXPECT_TRUE(r.easy());
  r.values.fill(0.4);
  EXPECT_FALSE(r.easy());
  EXPECT_EQ(measure_index("hub"), 14u);
  EXPECT_EQ(code_of([] { measure_index("zz"); }), ErrorCode::InvalidConfig);
}

TEST(Complexity, InvalidSamples) {
  Sample one;
  one.x = FeatureMatrix(1, 1);
  one.y = {1};
  EXPECT_EQ(code_of([&] { validate_sample(one); }), ErrorCode::InvalidSample);

  Sample single_class;
  single_class.x = FeatureMatrix(3, 1);
  single_class.y = {0, 0, 0};
  EXPECT_EQ(code_of([&] { compute_complexity(single_class); }), ErrorCode::InvalidSample);

  Sample no_features;
  no_features.x = FeatureMatrix(2, 0);
  no_features.y = {0, 1};
  EXPECT_EQ(code_of([&] { validate_sample(no_features); }), ErrorCode::InvalidSample);
}

TEST(Complexity, BalancedClassesHaveNoImbalance) {
  Sample s;
  s.x = FeatureMatrix(4, 1);
  s.y = {0, 1, 0, 1};
  for (std::size_t i = 0; i < 4; ++i) s.x(i, 0) = static_cast<double>(i);
  auto b = balance_measures(s);
  EXPECT_NEAR(b.c1, 0.0, 1e-12);
  EXPECT_NEAR(b.c2, 0.0, 1e-12);
}

TEST(Gower, SymmetricWithZeroDiagonal) {
  Sample s = load_fixture("blobs_50");
  auto d = gower_distances(s.x);
  const std::size_t n = s.size();
  ASSERT_EQ(d.size(), n * n);
  for (std::size_t i = 0; i < n; ++i) {
    EXPECT_EQ(d[i * n + i], 0.0f);
    for (std::size_t j = 0; j < n; ++j) {
      EXPECT_EQ(d[i * n + j], d[j * n + i]);
      EXPECT_GE(d[i * n + j], 0.0f);
      EXPECT_LE(d[i * n + j], 1.0f);
    }
  }
}

TEST(Subsample, StratifiedAndSeeded) {
  Labels y(1000, 0);
  for (std::size_t i = 0; i < 100; ++i) y[i * 10] = 1;
  auto rows = stratified_subsample(y, 200, 7);
  EXPECT_EQ(rows.size(), 200u);
  EXPECT_TRUE(std::is_sorted(rows.begin(), rows.end()));
  std::size_t pos = 0;
  for (auto r : rows) pos += y[r];
  EXPECT_EQ(pos, 20u);
  EXPECT_EQ(rows, stratified_subsample(y, 200, 7));
  EXPECT_NE(rows, stratified_subsample(y, 200, 8));
  EXPECT_EQ(stratified_subsample(y, 0, 7).size(), 1000u);
  EXPECT_EQ(stratified_subsample(y, 5000, 7).size(), 1000u);
}

TEST(Subsample, CapIsRecordedInTheReport) {
  Sample s = load_fixture("blobs_500");
  ComplexityOptions o;
  o.max_samples = 100;
  auto r = compute_complexity(s, o);
  EXPECT_EQ(r.pairs, 500u);
  EXPECT_EQ(r.used, 100u);
  EXPECT_EQ(r.cap, 100u);
}

TEST(Profile, BuildsTwoColumnSampleFromSplits) {
  Dataset d = testing::synthetic_dataset(50, 5);
  Sample s = build_sample(d);
  EXPECT_EQ(s.x.cols, 2u);
  EXPECT_EQ(s.size(), d.splits.merged().size());
  Sample sb = build_sample(d, SchemeTag::CSJS_SB);
  EXPECT_EQ(sb.x.cols, 2u * d.left.schema().size());
  auto r = complexity_profile(d);
  EXPECT_EQ(r.dataset, d.name);
  EXPECT_EQ(r.scheme, "CSJS");
  EXPECT_EQ(code_of([&] { build_sample(d, SchemeTag::SAQ); }), ErrorCode::InvalidConfig);
}

}  // namespace
}  // namespace erdiff
