#include "erdiff/linearity.hpp"

#include <algorithm>

#include "erdiff/errors.hpp"

namespace erdiff {

double f1_score(const Confusion& c) {
  if (c.tp == 0) return 0.0;
  double tp = static_cast<double>(c.tp);
  double re = tp / static_cast<double>(c.tp + c.fn);
  double pr = tp / static_cast<double>(c.tp + c.fp);
  return 2.0 * re * pr / (re + pr);
}

double f1_score(const IdPairSet& predicted, std::span<const LabeledPair> labeled) {
  Confusion c;
  for (const auto& p : labeled) {
    bool hit = predicted.count(IdPair{p.left, p.right}) > 0;
    if (hit && p.label) ++c.tp;
    else if (hit) ++c.fp;
    else if (p.label) ++c.fn;
  }
  return f1_score(c);
}

Confusion confusion_at(std::span<const double> scores, std::span<const std::uint8_t> labels, double t) {
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    bool match = t <= scores[i];
    if (match && labels[i]) ++c.tp;
    else if (match) ++c.fp;
    else if (labels[i]) ++c.fn;
  }
  return c;
}

namespace {

void check_sizes(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  if (scores.size() != labels.size())
    fail(ErrorCode::DimensionMismatch, "scores and labels differ in length");
}

}  // namespace

ThresholdSweep grid_sweep(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_sizes(scores, labels);
  std::vector<double> all(scores.begin(), scores.end());
  std::vector<double> pos;
  for (std::size_t i = 0; i < scores.size(); ++i)
    if (labels[i]) pos.push_back(scores[i]);
  std::sort(all.begin(), all.end());
  std::sort(pos.begin(), pos.end());

  ThresholdSweep out;
  out.curve.resize(kGridPoints);
  for (int k = 1; k <= kGridPoints; ++k) {
    double t = grid_threshold(k);
    auto predicted = static_cast<std::size_t>(all.end() - std::lower_bound(all.begin(), all.end(), t));
    auto tp = static_cast<std::size_t>(pos.end() - std::lower_bound(pos.begin(), pos.end(), t));
    Confusion c{tp, predicted - tp, pos.size() - tp};
    double f1 = f1_score(c);
    out.curve[k - 1] = f1;
    if (f1 > out.f1_max) {
      out.f1_max = f1;
      out.t_best = t;
    }
  }
  return out;
}

ThresholdSweep grid_sweep_naive(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_sizes(scores, labels);
  ThresholdSweep out;
  out.curve.resize(kGridPoints);
  for (int k = 1; k <= kGridPoints; ++k) {
    double t = grid_threshold(k);
    double f1 = f1_score(confusion_at(scores, labels, t));
    out.curve[k - 1] = f1;
    if (f1 > out.f1_max) {
      out.f1_max = f1;
      out.t_best = t;
    }
  }
  return out;
}

ThresholdSweep exact_sweep(std::span<const double> scores, std::span<const std::uint8_t> labels) {
  check_sizes(scores, labels);
  std::vector<std::size_t> order(scores.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  // Descending by score; each distinct value is a cut "t <= score".
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::size_t positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), std::uint8_t{1}));

  ThresholdSweep out;
  out.t_best = scores.empty() ? 0.0 : *std::min_element(scores.begin(), scores.end());
  std::size_t tp = 0, predicted = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    double t = scores[order[i]];
    while (i < order.size() && scores[order[i]] == t) {
      tp += labels[order[i]] ? 1 : 0;
      ++predicted;
      ++i;
    }
    double f1 = f1_score(Confusion{tp, predicted - tp, positives - tp});
    // Descending scan: ">=" keeps the smallest maximizing threshold.
    if (f1 >= out.f1_max && f1 > 0) {
      out.f1_max = f1;
      out.t_best = t;
    }
  }
  return out;
}

std::string_view to_string(SimilarityMeasure m) { return m == SimilarityMeasure::CS ? "CS" : "JS"; }

Labels labels_of(std::span<const LabeledPair> pairs) {
  Labels y(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) y[i] = pairs[i].label ? 1 : 0;
  return y;
}

std::vector<double> pair_similarities(const Dataset& dataset, std::span<const LabeledPair> pairs,
                                      SimilarityMeasure measure, const TokenizeOptions& options) {
  FeatureScheme scheme;
  scheme.tag = SchemeTag::CSJS;
  scheme.tokenize = options;
  FeatureExtractor fx(dataset.left, dataset.right, scheme);
  auto m = fx.extract_all(pairs);
  std::size_t col = measure == SimilarityMeasure::CS ? 0 : 1;
  std::vector<double> out(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) out[i] = m(i, col);
  return out;
}

namespace {

void require_positive(std::span<const std::uint8_t> labels) {
  if (std::find(labels.begin(), labels.end(), std::uint8_t{1}) == labels.end())
    fail(ErrorCode::DegenerateLabels, "no positive pair; the degree of linearity is undefined");
}

LinearityResult to_result(ThresholdSweep s, SimilarityMeasure measure) {
  return LinearityResult{measure, s.f1_max, s.t_best, std::move(s.curve)};
}

}  // namespace

LinearityResult degree_of_linearity(std::span<const double> scores, std::span<const std::uint8_t> labels,
                                    SimilarityMeasure measure) {
  require_positive(labels);
  return to_result(grid_sweep(scores, labels), measure);
}

LinearityResult degree_of_linearity(const Dataset& dataset, SimilarityMeasure measure,
                                    const TokenizeOptions& options) {
  auto pairs = dataset.splits.merged();
  auto labels = labels_of(pairs);
  require_positive(labels);
  auto scores = pair_similarities(dataset, pairs, measure, options);
  return degree_of_linearity(scores, labels, measure);
}

LinearityResult exact_linearity_oracle(std::span<const double> scores, std::span<const std::uint8_t> labels,
                                       SimilarityMeasure measure) {
  require_positive(labels);
  return to_result(exact_sweep(scores, labels), measure);
}

LinearityResult exact_linearity_oracle(const Dataset& dataset, SimilarityMeasure measure,
                                       const TokenizeOptions& options) {
  auto pairs = dataset.splits.merged();
  auto labels = labels_of(pairs);
  require_positive(labels);
  auto scores = pair_similarities(dataset, pairs, measure, options);
  return exact_linearity_oracle(scores, labels, measure);
}

}  // namespace erdiff
