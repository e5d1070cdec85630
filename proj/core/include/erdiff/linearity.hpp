#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "erdiff/corpus.hpp"
#include "erdiff/features.hpp"

namespace erdiff {

/// 0/1 labels, one per pair.
using Labels = std::vector<std::uint8_t>;

/// Grid thresholds t_k = k/100 for k = 1..99.
inline constexpr int kGridPoints = 99;
inline double grid_threshold(int k) { return static_cast<double>(k) / 100.0; }

struct Confusion {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// Harmonic mean of precision and recall; 0 when there is no true positive.
double f1_score(const Confusion& c);
/// `predicted` is a set of pairs declared matches; every predicted pair is
/// expected to appear in `labeled`.
double f1_score(const IdPairSet& predicted, std::span<const LabeledPair> labeled);

/// Confusion of the rule "match iff t <= score".
Confusion confusion_at(std::span<const double> scores, std::span<const std::uint8_t> labels, double t);

struct ThresholdSweep {
  double f1_max = 0;
  /// Smallest threshold attaining f1_max (0.01 when every F1 is zero).
  double t_best = 0.01;
  /// F1 at t_1..t_99; empty for the exact oracle.
  std::vector<double> curve;
};

/// Grid sweep in O(n log n + 99) via sorted scores and prefix counts. Output
/// is identical to evaluating the rule separately at every grid point.
ThresholdSweep grid_sweep(std::span<const double> scores, std::span<const std::uint8_t> labels);
/// Literal 99-pass loop; reference for grid_sweep.
ThresholdSweep grid_sweep_naive(std::span<const double> scores, std::span<const std::uint8_t> labels);
/// Every distinct observed score as a candidate threshold.
ThresholdSweep exact_sweep(std::span<const double> scores, std::span<const std::uint8_t> labels);

enum class SimilarityMeasure { CS, JS };
std::string_view to_string(SimilarityMeasure m);

struct LinearityResult {
  SimilarityMeasure measure = SimilarityMeasure::CS;
  double f1_max = 0;
  double t_best = 0.01;
  std::vector<double> curve;
};

/// Similarity scores of every pair under CS or JS of all-attribute token sets.
std::vector<double> pair_similarities(const Dataset& dataset, std::span<const LabeledPair> pairs,
                                      SimilarityMeasure measure, const TokenizeOptions& options = {});

/// Maximum F1 of a single global threshold over train, validation and test
/// merged. Throws DegenerateLabels when no pair is positive.
LinearityResult degree_of_linearity(const Dataset& dataset, SimilarityMeasure measure,
                                    const TokenizeOptions& options = {});
LinearityResult degree_of_linearity(std::span<const double> scores, std::span<const std::uint8_t> labels,
                                    SimilarityMeasure measure);

LinearityResult exact_linearity_oracle(const Dataset& dataset, SimilarityMeasure measure,
                                       const TokenizeOptions& options = {});
LinearityResult exact_linearity_oracle(std::span<const double> scores, std::span<const std::uint8_t> labels,
                                       SimilarityMeasure measure);

Labels labels_of(std::span<const LabeledPair> pairs);

}  // namespace erdiff
