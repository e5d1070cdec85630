#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <nlohmann/json.hpp>

#include "erdiff/csv.hpp"
#include "erdiff/esde.hpp"
#include "erdiff/forest.hpp"
#include "erdiff/legacy_random.hpp"
#include "erdiff/results.hpp"
#include "error_code.hpp"
#include "synthetic.hpp"

namespace erdiff {
namespace {

using testing::code_of;

FeatureMatrix matrix(std::initializer_list<std::initializer_list<double>> rows) {
  FeatureMatrix m(rows.size(), rows.begin()->size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    std::size_t c = 0;
    for (double v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

TEST(EsdeTrain, SmallestSeparatingThreshold) {
  auto x = matrix({{0.8}, {0.9}, {0.2}});
  Labels y{1, 1, 0};
  auto t = esde_train(x, y);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_DOUBLE_EQ(t[0].threshold, 0.21);
  EXPECT_DOUBLE_EQ(t[0].f1, 1.0);
}

TEST(EsdeTrain, ConstantFeaturePredictsEverything) {
  auto x = matrix({{1.0, 0.9}, {1.0, 0.1}, {1.0, 0.2}, {1.0, 0.3}});
  Labels y{1, 0, 0, 0};
  auto t = esde_train(x, y);
  EXPECT_DOUBLE_EQ(t[0].f1, 2 * 0.25 / 1.25);
  EXPECT_DOUBLE_EQ(t[0].threshold, 0.01);
  EXPECT_DOUBLE_EQ(t[1].f1, 1.0);
  EXPECT_EQ(code_of([&] { esde_train(x, Labels{0, 0, 0, 0}); }), ErrorCode::DegenerateLabels);
}

TEST(EsdeValidate, PicksBestValidationFeatureWithLowestIndexOnTies) {
  std::vector<FeatureThreshold> trained{{1.0, 0.5}, {1.0, 0.5}};
  auto x = matrix({{0.9, 0.9}, {0.1, 0.1}});
  Labels y{1, 0};
  auto sel = esde_validate(x, y, trained);
  EXPECT_EQ(sel.feature, 0u);
  EXPECT_EQ(sel.per_feature, (std::vector<double>{1.0, 1.0}));

  FeatureMatrix empty(0, 2);
  EXPECT_EQ(code_of([&] { esde_validate(empty, Labels{}, trained); }), ErrorCode::EmptySplit);
}

// Feature 0 is perfect on training data but fails on validation; feature 1
// is weaker in training and generalizes.
TEST(EsdeValidate, SelectionFollowsValidationNotTraining) {
  auto train = matrix({{0.9, 0.7}, {0.8, 0.6}, {0.85, 0.3}, {0.1, 0.5}, {0.2, 0.2}, {0.3, 0.1}});
  Labels ty{1, 1, 1, 0, 0, 0};
  auto trained = esde_train(train, ty);
  EXPECT_DOUBLE_EQ(trained[0].f1, 1.0);
  EXPECT_DOUBLE_EQ(trained[0].threshold, 0.31);
  EXPECT_DOUBLE_EQ(trained[1].f1, 6.0 / 7.0);
  EXPECT_DOUBLE_EQ(trained[1].threshold, 0.21);

  auto valid = matrix({{0.2, 0.8}, {0.25, 0.9}, {0.1, 0.1}, {0.4, 0.15}});
  Labels vy{1, 1, 0, 0};
  auto sel = esde_validate(valid, vy, trained);
  EXPECT_EQ(sel.feature, 1u);
  EXPECT_DOUBLE_EQ(sel.threshold, 0.21);
  EXPECT_DOUBLE_EQ(sel.f1, 1.0);
  EXPECT_DOUBLE_EQ(sel.per_feature[0], 0.0);
}

TEST(EsdeTest, UsesOnlyTheSelectedColumn) {
  auto x = matrix({{0.9, 0.0}, {0.1, 1.0}, {0.7, 0.5}});
  Labels y{1, 0, 1};
  double f1 = esde_test(x, y, 0, 0.5);
  EXPECT_DOUBLE_EQ(f1, 1.0);
  for (std::size_t r = 0; r < x.rows; ++r) x(r, 1) = 0.123 * static_cast<double>(r);
  EXPECT_DOUBLE_EQ(esde_test(x, y, 0, 0.5), f1);
}

TEST(EsdeRun, EndToEndOnSyntheticData) {
  Dataset d = testing::synthetic_dataset(80, 11);
  FeatureScheme sa;
  sa.tag = SchemeTag::SA;
  auto run = esde_run(d, sa);
  EXPECT_EQ(run.result.matcher, "SA-ESDE");
  EXPECT_EQ(run.result.dataset, d.name);
  EXPECT_EQ(run.result.family, Family::Linear);
  EXPECT_GE(run.result.f1, 0.0);
  EXPECT_LE(run.result.f1, 100.0);
  EXPECT_EQ(run.model.feature_names.size(), 3u);
  EXPECT_GT(run.result.f1, 70.0);

  // Shuffling each split leaves the outcome unchanged.
  Dataset shuffled = d;
  LegacyRandom rng(5);
  for (auto* split : {&shuffled.splits.train, &shuffled.splits.validation, &shuffled.splits.test}) {
    auto order = rng.permutation(split->size());
    std::vector<LabeledPair> copy;
    for (auto i : order) copy.push_back((*split)[i]);
    *split = copy;
  }
  auto again = esde_run(shuffled, sa);
  EXPECT_EQ(again.result.f1, run.result.f1);
  EXPECT_EQ(again.model.selection.feature, run.model.selection.feature);
}

TEST(EsdeRun, LabelsDefinedByCosineAreRecoveredExactly) {
  Dataset d = testing::synthetic_dataset(80, 12);
  auto relabel = [&](std::vector<LabeledPair>& split) {
    auto cs = pair_similarities(d, split, SimilarityMeasure::CS);
    for (std::size_t i = 0; i < split.size(); ++i) split[i].label = cs[i] >= 0.5;
  };
  relabel(d.splits.train);
  relabel(d.splits.validation);
  relabel(d.splits.test);
  FeatureScheme sa;
  EXPECT_DOUBLE_EQ(esde_run(d, sa).result.f1, 100.0);
}

TEST(EsdeRun, EmbeddingSchemesNeedAStore) {
  Dataset d = testing::synthetic_dataset(20, 1);
  FeatureScheme saf;
  saf.tag = SchemeTag::SAF;
  EXPECT_EQ(code_of([&] { esde_run(d, saf); }), ErrorCode::MissingEmbedding);
  EXPECT_EQ(esde_name(SchemeTag::SBQ), "SBQ-ESDE");
}

TEST(Tree, SolvesXorThatNoThresholdCan) {
  FeatureMatrix x(40, 2);
  Labels y(40);
  for (std::size_t i = 0; i < 40; ++i) {
    bool a = i % 2, b = (i / 2) % 2;
    x(i, 0) = a ? 0.8 : 0.2;
    x(i, 1) = b ? 0.8 : 0.2;
    y[i] = a != b;
  }
  auto tree = train_tree(x, y, TreeParams{2, 1, 0});
  EXPECT_LE(tree.depth(), 2u);
  for (std::size_t i = 0; i < 40; ++i) EXPECT_EQ(tree.predict(x.row(i)), y[i]);
  for (const auto& t : esde_train(x, y)) EXPECT_LT(t.f1, 1.0);
}

TEST(Tree, UnlimitedDepthFitsDistinctPoints) {
  LegacyRandom rng(3);
  FeatureMatrix x(60, 2);
  Labels y(60);
  for (std::size_t i = 0; i < 60; ++i) {
    x(i, 0) = rng.random_sample();
    x(i, 1) = rng.random_sample();
    y[i] = rng.below(2);
  }
  y[0] = 0;
  y[1] = 1;
  auto tree = train_tree(x, y, TreeParams{1000, 1, 0});
  for (std::size_t i = 0; i < 60; ++i) EXPECT_EQ(tree.predict(x.row(i)), y[i]);
  EXPECT_EQ(code_of([&] { train_tree(x, Labels(60, 1)); }), ErrorCode::DegenerateLabels);
}

TEST(Forest, CloseToReferenceForestOnFixture) {
  auto rows = csv::read_file(testing::fixture_dir() / "forest_500.csv");
  std::vector<std::array<double, 2>> train_x, test_x;
  Labels train_y, test_y;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::array<double, 2> v{std::stod(rows[i][0].text), std::stod(rows[i][1].text)};
    bool label = rows[i][2].text == "1";
    if (rows[i][3].text == "train") {
      train_x.push_back(v);
      train_y.push_back(label);
    } else {
      test_x.push_back(v);
      test_y.push_back(label);
    }
  }
  FeatureMatrix x(train_x.size(), 2);
  for (std::size_t i = 0; i < train_x.size(); ++i) {
    x(i, 0) = train_x[i][0];
    x(i, 1) = train_x[i][1];
  }
  auto forest = train_forest(x, train_y);
  EXPECT_EQ(forest.size(), 100u);
  Confusion c;
  for (std::size_t i = 0; i < test_x.size(); ++i) {
    bool p = forest.predict(test_x[i]);
    if (p && test_y[i]) ++c.tp;
    if (p && !test_y[i]) ++c.fp;
    if (!p && test_y[i]) ++c.fn;
  }
  std::ifstream in(testing::fixture_dir() / "forest_golden.json");
  double reference = nlohmann::json::parse(in)["test_f1"].get<double>();
  EXPECT_NEAR(f1_score(c), reference, 0.03);
}

TEST(Baseline, NamesAndFamily) {
  Dataset d = testing::synthetic_dataset(60, 4);
  FeatureScheme sb;
  sb.tag = SchemeTag::SB;
  auto rf = baseline_run(d, sb, BaselineKind::Forest);
  EXPECT_EQ(rf.matcher, "RF[SB]");
  EXPECT_EQ(rf.family, Family::Nonlinear);
  EXPECT_GT(rf.f1, 50.0);
  EXPECT_EQ(baseline_run(d, sb, BaselineKind::Tree).matcher, "DT[SB]");
}

TEST(Results, IngestSkipsUnavailableCellsAndValidatesScores) {
  auto dir = testing::scratch_dir("results");
  {
    std::ofstream out(dir / "r.csv");
    out << "matcher,dataset,f1,family\n"
           "EMTransformer-R(15),Ds4,84.83,nonlinear\n"
           "DITTO,Ds4,-,non-linear\n"
           "SA-ESDE,Ds4,70.5,linear\n"
           "X,Ds5,,linear\n";
  }
  auto r = ingest_results(dir / "r.csv");
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].matcher, "EMTransformer-R(15)");
  EXPECT_DOUBLE_EQ(r[0].f1, 84.83);
  EXPECT_EQ(r[0].family, Family::Nonlinear);
  EXPECT_EQ(r[0].source, ResultSource::Ingested);
  EXPECT_EQ(results_for(r, "Ds4").size(), 2u);
  EXPECT_TRUE(results_for(r, "Ds5").empty());

  write_results(r, dir / "copy.csv");
  auto back = ingest_results(dir / "copy.csv");
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back[1].matcher, "SA-ESDE");
  EXPECT_DOUBLE_EQ(back[1].f1, 70.5);

  {
    std::ofstream out(dir / "bad.csv");
    out << "matcher,dataset,f1,family\nM,D,101,linear\n";
  }
  EXPECT_EQ(code_of([&] { ingest_results(dir / "bad.csv"); }), ErrorCode::InvalidScore);
  EXPECT_EQ(parse_family("Non-Linear"), Family::Nonlinear);
  EXPECT_EQ(code_of([] { parse_family("quadratic"); }), ErrorCode::MalformedRow);
}

}  // namespace
}  // namespace erdiff
