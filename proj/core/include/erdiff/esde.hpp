#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "erdiff/corpus.hpp"
#include "erdiff/features.hpp"
#include "erdiff/linearity.hpp"
#include "erdiff/results.hpp"

namespace erdiff {

/// Best grid threshold and training F1 of one feature.
struct FeatureThreshold {
  double f1 = 0;
  double threshold = 0.01;
};

struct EsdeSelection {
  std::size_t feature = 0;
  double threshold = 0.01;
  double f1 = 0;
  /// Validation F1 of every feature under its trained threshold.
  std::vector<double> per_feature;
};

struct EsdeModel {
  SchemeTag scheme = SchemeTag::SA;
  std::vector<std::string> feature_names;
  std::vector<FeatureThreshold> trained;
  EsdeSelection selection;
};

/// Per feature, the smallest grid threshold maximizing training F1 of
/// "match iff t <= value". Throws DegenerateLabels unless both labels occur.
std::vector<FeatureThreshold> esde_train(const FeatureMatrix& x, std::span<const std::uint8_t> labels);

/// Picks the feature whose trained threshold scores best on validation
/// (lowest index on ties). Throws EmptySplit on an empty validation set.
EsdeSelection esde_validate(const FeatureMatrix& x, std::span<const std::uint8_t> labels,
                            std::span<const FeatureThreshold> trained);

/// F1 in [0, 1] of the single-feature rule on the test set.
double esde_test(std::span<const double> feature_values, std::span<const std::uint8_t> labels, double threshold);
double esde_test(const FeatureMatrix& x, std::span<const std::uint8_t> labels, std::size_t feature, double threshold);

struct EsdeRun {
  EsdeModel model;
  MatcherResult result;
};

/// Trains on train, selects on validation, scores on test. The result's f1
/// is in percentage points.
EsdeRun esde_run(const Dataset& dataset, const FeatureScheme& scheme);

/// "SA-ESDE", "SBQ-ESDE", ...
std::string esde_name(SchemeTag tag);

}  // namespace erdiff
