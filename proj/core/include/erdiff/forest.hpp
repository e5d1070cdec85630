#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "erdiff/corpus.hpp"
#include "erdiff/features.hpp"
#include "erdiff/results.hpp"

namespace erdiff {

struct TreeParams {
  std::size_t max_depth = 8;
  std::size_t min_leaf = 2;
  /// Features examined per split; 0 means all of them.
  std::size_t max_features = 0;
};

/// Axis-aligned binary tree grown greedily on Gini impurity.
class DecisionTree {
 public:
  struct Node {
    // Internal: x[feature] <= threshold goes left. Leaf when left == 0.
    std::size_t feature = 0;
    double threshold = 0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    std::uint32_t negatives = 0;
    std::uint32_t positives = 0;
  };

  std::uint8_t predict(std::span<const double> x) const;
  std::size_t depth() const;
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  friend DecisionTree train_tree_rows(const FeatureMatrix&, std::span<const std::uint8_t>,
                                      std::vector<std::size_t>, const TreeParams&, std::uint32_t);
  std::vector<Node> nodes_;
};

/// Throws DegenerateLabels unless both labels occur.
DecisionTree train_tree(const FeatureMatrix& x, std::span<const std::uint8_t> labels, const TreeParams& params = {},
                        std::uint32_t seed = 42);
/// Grows a tree on the given row multiset (bootstrap samples repeat rows).
DecisionTree train_tree_rows(const FeatureMatrix& x, std::span<const std::uint8_t> labels,
                             std::vector<std::size_t> rows, const TreeParams& params, std::uint32_t seed);

struct ForestParams {
  TreeParams tree{8, 2, 0};
  std::size_t trees = 100;
  /// Per-split feature subsample of sqrt(|F|) when tree.max_features is 0.
  bool sqrt_features = true;
};

/// Bagged trees; prediction is the majority vote (ties go to non-match).
class RandomForest {
 public:
  std::uint8_t predict(std::span<const double> x) const;
  std::size_t size() const { return trees_.size(); }
  const std::vector<DecisionTree>& trees() const { return trees_; }

 private:
  friend RandomForest train_forest(const FeatureMatrix&, std::span<const std::uint8_t>, const ForestParams&,
                                   std::uint32_t);
  std::vector<DecisionTree> trees_;
};

RandomForest train_forest(const FeatureMatrix& x, std::span<const std::uint8_t> labels,
                          const ForestParams& params = {}, std::uint32_t seed = 42);

enum class BaselineKind { Tree, Forest };

/// Non-linear baseline over a feature scheme: fit on train, F1 on test (in
/// percentage points). Named e.g. "DT[SB]" or "RF[SB]".
MatcherResult baseline_run(const Dataset& dataset, const FeatureScheme& scheme, BaselineKind kind,
                           std::uint32_t seed = 42);

}  // namespace erdiff
