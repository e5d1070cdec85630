#include "erdiff/forest.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "erdiff/errors.hpp"
#include "erdiff/legacy_random.hpp"
#include "erdiff/linearity.hpp"
#include "erdiff/parallel.hpp"

namespace erdiff {
namespace {

void require_two_classes(std::span<const std::uint8_t> labels) {
  bool pos = std::find(labels.begin(), labels.end(), std::uint8_t{1}) != labels.end();
  bool neg = std::find(labels.begin(), labels.end(), std::uint8_t{0}) != labels.end();
  if (!pos || !neg) fail(ErrorCode::DegenerateLabels, "training pairs must contain both matches and non-matches");
}

double gini(double pos, double total) {
  if (total <= 0) return 0;
  double p = pos / total;
  return 2.0 * p * (1.0 - p);
}

struct Split {
  bool found = false;
  std::size_t feature = 0;
  double threshold = 0;
  double impurity = 0;
};

class Grower {
 public:
  Grower(const FeatureMatrix& x, std::span<const std::uint8_t> y, const TreeParams& p, std::uint32_t seed)
      : x_(x), y_(y), p_(p), rng_(seed) {}

  std::vector<DecisionTree::Node> grow(std::vector<std::size_t> rows) {
    nodes_.clear();
    build(rows, 0);
    return std::move(nodes_);
  }

 private:
  std::uint32_t build(std::vector<std::size_t>& rows, std::size_t depth) {
    auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    std::uint32_t pos = 0;
    for (auto r : rows) pos += y_[r];
    nodes_[id].positives = pos;
    nodes_[id].negatives = static_cast<std::uint32_t>(rows.size()) - pos;

    if (pos == 0 || pos == rows.size() || depth >= p_.max_depth || rows.size() < 2 * p_.min_leaf) return id;
    Split s = best_split(rows);
    if (!s.found) return id;

    std::vector<std::size_t> left, right;
    for (auto r : rows) (x_(r, s.feature) <= s.threshold ? left : right).push_back(r);
    rows.clear();
    rows.shrink_to_fit();
    nodes_[id].feature = s.feature;
    nodes_[id].threshold = s.threshold;
    std::uint32_t l = build(left, depth + 1);
    std::uint32_t r = build(right, depth + 1);
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
  }

  std::vector<std::size_t> candidate_features() {
    std::size_t d = x_.cols;
    std::size_t k = p_.max_features == 0 ? d : std::min(p_.max_features, d);
    if (k == d) {
      std::vector<std::size_t> all(d);
      std::iota(all.begin(), all.end(), std::size_t{0});
      return all;
    }
    return rng_.choice_without_replacement(d, k);
  }

  Split best_split(const std::vector<std::size_t>& rows) {
    const double n = static_cast<double>(rows.size());
    double total_pos = 0;
    for (auto r : rows) total_pos += y_[r];
    Split best;
    // Like the usual CART growers, the best valid split is taken even when it
    // does not lower impurity; XOR-shaped nodes need that first step.
    best.impurity = std::numeric_limits<double>::infinity();

    std::vector<std::pair<double, std::uint8_t>> v(rows.size());
    for (std::size_t f : candidate_features()) {
      for (std::size_t i = 0; i < rows.size(); ++i) v[i] = {x_(rows[i], f), y_[rows[i]]};
      std::sort(v.begin(), v.end());
      double left_pos = 0;
      for (std::size_t i = 0; i + 1 < v.size(); ++i) {
        left_pos += v[i].second;
        if (v[i].first == v[i + 1].first) continue;
        std::size_t nl = i + 1, nr = v.size() - nl;
        if (nl < p_.min_leaf || nr < p_.min_leaf) continue;
        double dl = static_cast<double>(nl), dr = static_cast<double>(nr);
        double imp = (dl * gini(left_pos, dl) + dr * gini(total_pos - left_pos, dr)) / n;
        if (!best.found || imp < best.impurity - 1e-15) {
          best.found = true;
          best.feature = f;
          best.threshold = v[i].first + (v[i + 1].first - v[i].first) / 2.0;
          if (best.threshold == v[i + 1].first) best.threshold = v[i].first;
          best.impurity = imp;
        }
      }
    }
    return best;
  }

  const FeatureMatrix& x_;
  std::span<const std::uint8_t> y_;
  TreeParams p_;
  LegacyRandom rng_;
  std::vector<DecisionTree::Node> nodes_;
};

}  // namespace

std::uint8_t DecisionTree::predict(std::span<const double> x) const {
  std::size_t i = 0;
  while (nodes_[i].left != 0) i = x[nodes_[i].feature] <= nodes_[i].threshold ? nodes_[i].left : nodes_[i].right;
  return nodes_[i].positives > nodes_[i].negatives ? 1 : 0;
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> d(nodes_.size(), 0);
  std::size_t best = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    best = std::max(best, d[i]);
    if (nodes_[i].left != 0) {
      d[nodes_[i].left] = d[i] + 1;
      d[nodes_[i].right] = d[i] + 1;
    }
  }
  return best;
}

DecisionTree train_tree_rows(const FeatureMatrix& x, std::span<const std::uint8_t> labels,
                             std::vector<std::size_t> rows, const TreeParams& params, std::uint32_t seed) {
  if (rows.empty()) fail(ErrorCode::EmptyInput, "cannot grow a tree on zero rows");
  Grower g(x, labels, params, seed);
  DecisionTree t;
  t.nodes_ = g.grow(std::move(rows));
  return t;
}

DecisionTree train_tree(const FeatureMatrix& x, std::span<const std::uint8_t> labels, const TreeParams& params,
                        std::uint32_t seed) {
  if (x.rows != labels.size()) fail(ErrorCode::DimensionMismatch, "feature rows and labels differ in length");
  require_two_classes(labels);
  std::vector<std::size_t> rows(x.rows);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  return train_tree_rows(x, labels, std::move(rows), params, seed);
}

std::uint8_t RandomForest::predict(std::span<const double> x) const {
  std::size_t votes = 0;
  for (const auto& t : trees_) votes += t.predict(x);
  return 2 * votes > trees_.size() ? 1 : 0;
}

RandomForest train_forest(const FeatureMatrix& x, std::span<const std::uint8_t> labels, const ForestParams& params,
                          std::uint32_t seed) {
  if (x.rows != labels.size()) fail(ErrorCode::DimensionMismatch, "feature rows and labels differ in length");
  require_two_classes(labels);
  TreeParams tp = params.tree;
  if (tp.max_features == 0 && params.sqrt_features)
    tp.max_features = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(static_cast<double>(x.cols))));

  RandomForest forest;
  forest.trees_.resize(params.trees);
  // Each tree draws from its own stream, so trees are independent of the
  // order in which they are grown.
  parallel_for(params.trees, [&](std::size_t t) {
    LegacyRandom rng(seed + static_cast<std::uint32_t>(t) * 7919u);
    std::vector<std::size_t> rows(x.rows);
    for (auto& r : rows) r = rng.below(x.rows);
    forest.trees_[t] = train_tree_rows(x, labels, std::move(rows), tp, rng.next_u32());
  }, 1);
  return forest;
}

MatcherResult baseline_run(const Dataset& dataset, const FeatureScheme& scheme, BaselineKind kind, std::uint32_t seed) {
  FeatureExtractor fx(dataset.left, dataset.right, scheme);
  auto xt = fx.extract_all(dataset.splits.train);
  auto yt = labels_of(dataset.splits.train);
  auto xc = fx.extract_all(dataset.splits.test);
  auto yc = labels_of(dataset.splits.test);

  std::vector<std::uint8_t> pred(xc.rows);
  std::string name;
  if (kind == BaselineKind::Tree) {
    auto tree = train_tree(xt, yt, TreeParams{}, seed);
    for (std::size_t i = 0; i < xc.rows; ++i) pred[i] = tree.predict(xc.row(i));
    name = "DT[" + std::string(to_string(scheme.tag)) + "]";
  } else {
    auto forest = train_forest(xt, yt, ForestParams{}, seed);
    for (std::size_t i = 0; i < xc.rows; ++i) pred[i] = forest.predict(xc.row(i));
    name = "RF[" + std::string(to_string(scheme.tag)) + "]";
  }
  Confusion c;
  for (std::size_t i = 0; i < xc.rows; ++i) {
    if (pred[i] && yc[i]) ++c.tp;
    else if (pred[i]) ++c.fp;
    else if (yc[i]) ++c.fn;
  }
  return MatcherResult{name, dataset.name, 100.0 * f1_score(c), Family::Nonlinear, ResultSource::Computed};
}

}  // namespace erdiff
