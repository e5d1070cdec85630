#include "erdiff/esde.hpp"

#include <algorithm>

#include "erdiff/errors.hpp"
#include "erdiff/parallel.hpp"

namespace erdiff {
namespace {

std::vector<double> column(const FeatureMatrix& x, std::size_t f) {
  std::vector<double> out(x.rows);
  for (std::size_t i = 0; i < x.rows; ++i) out[i] = x(i, f);
  return out;
}

}  // namespace

std::vector<FeatureThreshold> esde_train(const FeatureMatrix& x, std::span<const std::uint8_t> labels) {
  if (x.rows != labels.size()) fail(ErrorCode::DimensionMismatch, "feature rows and labels differ in length");
  bool pos = std::find(labels.begin(), labels.end(), std::uint8_t{1}) != labels.end();
  bool neg = std::find(labels.begin(), labels.end(), std::uint8_t{0}) != labels.end();
  if (!pos || !neg) fail(ErrorCode::DegenerateLabels, "training pairs must contain both matches and non-matches");

  std::vector<FeatureThreshold> out(x.cols);
  parallel_for(x.cols, [&](std::size_t f) {
    auto values = column(x, f);
    auto sweep = grid_sweep(values, labels);
    out[f] = FeatureThreshold{sweep.f1_max, sweep.t_best};
  }, 1);
  return out;
}

EsdeSelection esde_validate(const FeatureMatrix& x, std::span<const std::uint8_t> labels,
                            std::span<const FeatureThreshold> trained) {
  if (x.rows != labels.size()) fail(ErrorCode::DimensionMismatch, "feature rows and labels differ in length");
  if (x.rows == 0) fail(ErrorCode::EmptySplit, "validation split has no pairs");
  if (trained.size() != x.cols) fail(ErrorCode::DimensionMismatch, "one trained threshold per feature is required");

  EsdeSelection sel;
  sel.per_feature.resize(x.cols);
  for (std::size_t f = 0; f < x.cols; ++f) {
    Confusion c;
    for (std::size_t i = 0; i < x.rows; ++i) {
      bool match = trained[f].threshold <= x(i, f);
      if (match && labels[i]) ++c.tp;
      else if (match) ++c.fp;
      else if (labels[i]) ++c.fn;
    }
    sel.per_feature[f] = f1_score(c);
  }
  sel.feature = 0;
  for (std::size_t f = 1; f < x.cols; ++f)
    if (sel.per_feature[f] > sel.per_feature[sel.feature]) sel.feature = f;
  sel.f1 = sel.per_feature.empty() ? 0.0 : sel.per_feature[sel.feature];
  sel.threshold = trained.empty() ? 0.01 : trained[sel.feature].threshold;
  return sel;
}

double esde_test(std::span<const double> values, std::span<const std::uint8_t> labels, double threshold) {
  return f1_score(confusion_at(values, labels, threshold));
}

double esde_test(const FeatureMatrix& x, std::span<const std::uint8_t> labels, std::size_t feature, double threshold) {
  return esde_test(column(x, feature), labels, threshold);
}

std::string esde_name(SchemeTag tag) { return std::string(to_string(tag)) + "-ESDE"; }

EsdeRun esde_run(const Dataset& dataset, const FeatureScheme& scheme) {
  FeatureExtractor fx(dataset.left, dataset.right, scheme);
  const auto& s = dataset.splits;
  auto train_labels = labels_of(s.train);
  auto xt = fx.extract_all(s.train);
  EsdeRun run;
  run.model.scheme = scheme.tag;
  run.model.feature_names = fx.names();
  run.model.trained = esde_train(xt, train_labels);

  auto xv = fx.extract_all(s.validation);
  run.model.selection = esde_validate(xv, labels_of(s.validation), run.model.trained);

  // Only the selected feature is needed on the test split.
  const auto& sel = run.model.selection;
  auto xc = fx.extract_all(s.test);
  double f1 = esde_test(xc, labels_of(s.test), sel.feature, sel.threshold);

  run.result = MatcherResult{esde_name(scheme.tag), dataset.name, 100.0 * f1, Family::Linear, ResultSource::Computed};
  return run;
}

}  // namespace erdiff
