#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "erdiff/complexity.hpp"
#include "erdiff/legacy_random.hpp"

namespace erdiff {
namespace {

Sample random_sample(LegacyRandom& rng, std::size_t n, std::size_t d) {
  Sample s;
  s.x = FeatureMatrix(n, d);
  s.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.y[i] = rng.below(2);
    for (std::size_t c = 0; c < d; ++c) s.x(i, c) = rng.random_sample() + 0.3 * s.y[i];
  }
  s.y[0] = 0;
  s.y[1] = 1;
  return s;
}

double distance(const Sample& s, std::size_t a, std::size_t b) {
  double sum = 0;
  for (std::size_t c = 0; c < s.x.cols; ++c) sum += (s.x(a, c) - s.x(b, c)) * (s.x(a, c) - s.x(b, c));
  return std::sqrt(sum);
}

double brute_loo_error(const Sample& s) {
  std::size_t wrong = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t best = i;
    double best_d = INFINITY;
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (j == i) continue;
      double d = distance(s, i, j);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    wrong += s.y[best] != s.y[i];
  }
  return static_cast<double>(wrong) / static_cast<double>(s.size());
}

struct Kruskal {
  double weight = 0;
  std::size_t cross = 0;
};

Kruskal brute_mst(const Sample& s) {
  struct Edge {
    double w;
    std::size_t a, b;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      double d = distance(s, i, j);
      if (d > 0) edges.push_back({d, i, j});
    }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) { return x.w < y.w; });
  std::vector<std::size_t> parent(s.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  Kruskal out;
  for (const auto& e : edges) {
    auto ra = find(e.a), rb = find(e.b);
    if (ra == rb) continue;
    parent[ra] = rb;
    out.weight += e.w;
    out.cross += s.y[e.a] != s.y[e.b];
  }
  return out;
}

Sample permuted(const Sample& s, const std::vector<std::size_t>& order) {
  Sample p;
  p.x = FeatureMatrix(s.size(), s.x.cols);
  p.y.resize(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    p.y[i] = s.y[order[i]];
    for (std::size_t c = 0; c < s.x.cols; ++c) p.x(i, c) = s.x(order[i], c);
  }
  return p;
}

TEST(NeighborhoodProperties, N3IsLeaveOneOutNearestNeighborError) {
  LegacyRandom rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = random_sample(rng, 10 + rng.below(60), 1 + rng.below(3));
    ASSERT_DOUBLE_EQ(measure_n3(s), brute_loo_error(s));
  }
}

TEST(NeighborhoodProperties, SpanningTreeMatchesKruskal) {
  LegacyRandom rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    auto s = random_sample(rng, 10 + rng.below(60), 1 + rng.below(3));
    auto k = brute_mst(s);
    ASSERT_NEAR(mst_weight(s), k.weight, 1e-9);
    ASSERT_DOUBLE_EQ(measure_n1(s), static_cast<double>(k.cross) / 2.0 / static_cast<double>(s.size()));
  }
}

// Coincident points are not joined by a zero-length edge; each copy hangs
// off its nearest distinct neighbor instead.
TEST(NeighborhoodProperties, DuplicatePointsFollowKruskalWithoutZeroEdges) {
  LegacyRandom rng(33);
  for (int trial = 0; trial < 10; ++trial) {
    auto s = random_sample(rng, 20, 2);
    Sample doubled;
    doubled.x = FeatureMatrix(40, 2);
    doubled.y.resize(40);
    for (std::size_t i = 0; i < 40; ++i) {
      doubled.y[i] = s.y[i % 20];
      doubled.x(i, 0) = s.x(i % 20, 0);
      doubled.x(i, 1) = s.x(i % 20, 1);
    }
    auto k = brute_mst(doubled);
    ASSERT_NEAR(mst_weight(doubled), k.weight, 1e-9);
    ASSERT_GT(mst_weight(doubled), mst_weight(s));
  }
}

TEST(NeighborhoodProperties, RowOrderDoesNotMatter) {
  LegacyRandom rng(34);
  for (int trial = 0; trial < 20; ++trial) {
    auto s = random_sample(rng, 20 + rng.below(40), 2);
    auto p = permuted(s, rng.permutation(s.size()));
    ASSERT_DOUBLE_EQ(measure_n1(s), measure_n1(p));
    ASSERT_NEAR(measure_n2(s), measure_n2(p), 1e-12);
    ASSERT_DOUBLE_EQ(measure_n3(s), measure_n3(p));
    ASSERT_NEAR(measure_t1(s), measure_t1(p), 1e-12);
    ASSERT_NEAR(measure_lsc(s), measure_lsc(p), 1e-12);
  }
}

TEST(NeighborhoodProperties, AllMeasuresInUnitIntervalAndDeterministic) {
  LegacyRandom rng(35);
  for (int trial = 0; trial < 15; ++trial) {
    auto s = random_sample(rng, 15 + rng.below(50), 1 + rng.below(3));
    ComplexityOptions o;
    o.seed = static_cast<std::uint32_t>(trial);
    auto a = compute_complexity(s, o);
    auto b = compute_complexity(s, o);
    ASSERT_EQ(a.values, b.values);
    for (std::size_t k = 0; k < kMeasureCount; ++k) {
      ASSERT_GE(a.values[k], 0.0) << kMeasureNames[k];
      ASSERT_LE(a.values[k], 1.0) << kMeasureNames[k];
    }
  }
}

}  // namespace
}  // namespace erdiff
