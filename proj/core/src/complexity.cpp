#include "erdiff/complexity.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>

#include "erdiff/errors.hpp"
#include "erdiff/legacy_random.hpp"
#include "erdiff/linear_svm.hpp"
#include "erdiff/parallel.hpp"

namespace erdiff {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double euclidean(const FeatureMatrix& x, std::size_t i, std::size_t j) {
  double s = 0;
  const double* a = x.data.data() + i * x.cols;
  const double* b = x.data.data() + j * x.cols;
  for (std::size_t f = 0; f < x.cols; ++f) {
    double d = a[f] - b[f];
    s += d * d;
  }
  return std::sqrt(s);
}

std::array<std::size_t, 2> class_counts(const Labels& y) {
  std::array<std::size_t, 2> c{0, 0};
  for (auto v : y) ++c[v ? 1 : 0];
  return c;
}

// Per-row nearest-neighbour facts shared by n2, n3, lsc and t1.
struct RowStats {
  double nearest_other = kInf;     // nearest j != i, any class
  std::size_t nearest_other_idx = 0;
  double nearest_friend = kInf;    // nearest same-class j != i
  double nearest_enemy = kInf;
  std::size_t nearest_enemy_idx = 0;
  double second_enemy = kInf;
};

std::vector<RowStats> row_stats(const Sample& s) {
  const std::size_t n = s.size();
  std::vector<RowStats> out(n);
  parallel_for(n, [&](std::size_t i) {
    RowStats r;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      double d = euclidean(s.x, i, j);
      if (d < r.nearest_other) {
        r.nearest_other = d;
        r.nearest_other_idx = j;
      }
      if (s.y[j] == s.y[i]) {
        r.nearest_friend = std::min(r.nearest_friend, d);
      } else if (d < r.nearest_enemy) {
        r.second_enemy = r.nearest_enemy;
        r.nearest_enemy = d;
        r.nearest_enemy_idx = j;
      } else if (d < r.second_enemy) {
        r.second_enemy = d;
      }
    }
    out[i] = r;
  }, 16);
  return out;
}

// Dense symmetric adjacency as bit rows.
class BitGraph {
 public:
  explicit BitGraph(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * words_, 0) {}

  void set(std::size_t i, std::size_t j) { bits_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * words_; }
  std::size_t words() const { return words_; }
  std::size_t size() const { return n_; }

  std::size_t degree(std::size_t i) const {
    std::size_t c = 0;
    const auto* r = row(i);
    for (std::size_t w = 0; w < words_; ++w) c += static_cast<std::size_t>(std::popcount(r[w]));
    return c;
  }

  template <typename F>
  void for_each_neighbor(std::size_t i, F&& f) const {
    const auto* r = row(i);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        int b = std::countr_zero(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> bits_;
};

// Gower distance with the reference's single-precision ranges and output.
class GowerMetric {
 public:
  explicit GowerMetric(const FeatureMatrix& x) : x_(x), max_(x.cols, 0.0), range_(x.cols, 0.0) {
    for (std::size_t f = 0; f < x.cols; ++f) {
      float mx = -std::numeric_limits<float>::infinity();
      float mn = std::numeric_limits<float>::infinity();
      for (std::size_t i = 0; i < x.rows; ++i) {
        float v = static_cast<float>(x(i, f));
        mx = std::max(mx, v);
        mn = std::min(mn, v);
      }
      if (x.rows == 0) mx = mn = 0.0f;
      max_[f] = static_cast<double>(mx);
      range_[f] = mx != 0.0f ? static_cast<double>(1.0f - mn / mx) : 0.0;
    }
    scaled_.resize(x.data.size());
    for (std::size_t i = 0; i < x.rows; ++i)
      for (std::size_t f = 0; f < x.cols; ++f)
        scaled_[i * x.cols + f] = max_[f] != 0.0 ? x(i, f) / max_[f] : 0.0;
  }

  float operator()(std::size_t i, std::size_t j) const {
    const std::size_t d = x_.cols;
    const double* a = scaled_.data() + i * d;
    const double* b = scaled_.data() + j * d;
    double s = 0;
    for (std::size_t f = 0; f < d; ++f) {
      double delta = std::abs(a[f] - b[f]);
      s += range_[f] != 0.0 ? delta / range_[f] : 0.0;
    }
    return static_cast<float>(s / static_cast<double>(d));
  }

 private:
  const FeatureMatrix& x_;
  std::vector<double> max_;
  std::vector<double> range_;
  std::vector<double> scaled_;
};

BitGraph epsilon_graph(const Sample& s, double epsilon) {
  const std::size_t n = s.size();
  GowerMetric g(s.x);
  // Global min/max over off-diagonal entries, then the normalized threshold.
  std::vector<float> row_min(n, std::numeric_limits<float>::infinity());
  std::vector<float> row_max(n, -std::numeric_limits<float>::infinity());
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      float d = g(i, j);
      row_min[i] = std::min(row_min[i], d);
      row_max[i] = std::max(row_max[i], d);
    }
  }, 16);
  float lo = *std::min_element(row_min.begin(), row_min.end());
  float hi = *std::max_element(row_max.begin(), row_max.end());
  float span = hi - lo;
  float eps = static_cast<float>(epsilon);

  BitGraph graph(n);
  std::vector<std::vector<std::size_t>> partner(n);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s.y[i] != s.y[j]) continue;
      float shifted = g(i, j) - lo;
      float normalized = shifted / span;
      if (normalized < eps) partner[i].push_back(j);
    }
  }, 16);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : partner[i]) {
      graph.set(i, j);
      graph.set(j, i);
    }
  }
  return graph;
}

}  // namespace

void validate_sample(const Sample& s) {
  if (s.x.rows != s.y.size()) fail(ErrorCode::InvalidSample, "feature rows and labels differ in length");
  if (s.size() < 2) fail(ErrorCode::InvalidSample, "a sample needs at least two pairs");
  if (s.x.cols < 1) fail(ErrorCode::InvalidSample, "a sample needs at least one feature");
  auto c = class_counts(s.y);
  if (c[0] == 0 || c[1] == 0) fail(ErrorCode::InvalidSample, "a sample needs both positive and negative pairs");
}

std::size_t measure_index(std::string_view name) {
  for (std::size_t i = 0; i < kMeasureNames.size(); ++i)
    if (kMeasureNames[i] == name) return i;
  fail(ErrorCode::InvalidConfig, "unknown complexity measure '" + std::string(name) + "'");
}

double ComplexityReport::mean() const {
  return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

std::vector<float> gower_distances(const FeatureMatrix& x) {
  GowerMetric g(x);
  const std::size_t n = x.rows;
  std::vector<float> out(n * n, 0.0f);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out[i * n + j] = out[j * n + i] = g(i, j);
  return out;
}

FeatureMeasures feature_measures(const Sample& s) {
  validate_sample(s);
  const std::size_t n = s.size();
  const std::size_t d = s.x.cols;
  auto counts = class_counts(s.y);
  const double p0 = static_cast<double>(counts[0]) / static_cast<double>(n);
  const double p1 = static_cast<double>(counts[1]) / static_cast<double>(n);

  Eigen::VectorXd mean0 = Eigen::VectorXd::Zero(d), mean1 = Eigen::VectorXd::Zero(d);
  Eigen::VectorXd min0 = Eigen::VectorXd::Constant(d, kInf), min1 = min0;
  Eigen::VectorXd max0 = Eigen::VectorXd::Constant(d, -kInf), max1 = max0;
  for (std::size_t i = 0; i < n; ++i) {
    auto r = s.x.row(i);
    for (std::size_t f = 0; f < d; ++f) {
      auto fi = static_cast<Eigen::Index>(f);
      if (s.y[i]) {
        mean1(fi) += r[f];
        min1(fi) = std::min(min1(fi), r[f]);
        max1(fi) = std::max(max1(fi), r[f]);
      } else {
        mean0(fi) += r[f];
        min0(fi) = std::min(min0(fi), r[f]);
        max0(fi) = std::max(max0(fi), r[f]);
      }
    }
  }
  mean0 /= static_cast<double>(counts[0]);
  mean1 /= static_cast<double>(counts[1]);

  Eigen::MatrixXd cov0 = Eigen::MatrixXd::Zero(d, d), cov1 = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Map<const Eigen::VectorXd> r(s.x.row(i).data(), static_cast<Eigen::Index>(d));
    if (s.y[i]) {
      Eigen::VectorXd c = r - mean1;
      cov1.noalias() += c * c.transpose();
    } else {
      Eigen::VectorXd c = r - mean0;
      cov0.noalias() += c * c.transpose();
    }
  }
  cov0 /= static_cast<double>(counts[0]);
  cov1 /= static_cast<double>(counts[1]);

  FeatureMeasures out{};

  // f1: maximum per-feature Fisher ratio.
  double best = -kInf;
  for (std::size_t f = 0; f < d; ++f) {
    auto fi = static_cast<Eigen::Index>(f);
    double diff = mean0(fi) - mean1(fi);
    double l = 2.0 * p0 * p1 * diff * diff;
    double m = p0 * cov0(fi, fi) + p1 * cov1(fi, fi) + 1e-12;
    best = std::max(best, l / m);
  }
  out.f1 = 1.0 / (1.0 + best);

  // f1v: directional Fisher ratio through the pseudo-inverse of the
  // within-class scatter.
  Eigen::MatrixXd w = p0 * cov0 + p1 * cov1;
  Eigen::VectorXd delta = mean0 - mean1;
  Eigen::MatrixXd b = delta * delta.transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cutoff = 1e-15 * (sv.size() ? sv.maxCoeff() : 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
  for (Eigen::Index k = 0; k < sv.size(); ++k)
    if (sv(k) > cutoff) inv(k) = 1.0 / sv(k);
  Eigen::MatrixXd pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
  Eigen::VectorXd dir = pinv * delta;
  double num = dir.dot(b * dir);
  double den = dir.dot(w * dir);
  double df = num / den;
  if (std::isnan(df)) df = 0.0;
  out.f1v = 1.0 / (1.0 + df);

  // f2 and f3: class-range overlap.
  double product = 1.0;
  std::vector<double> lo(d), hi(d);
  for (std::size_t f = 0; f < d; ++f) {
    auto fi = static_cast<Eigen::Index>(f);
    double minmax = std::min(max0(fi), max1(fi));
    double maxmin = std::max(min0(fi), min1(fi));
    double maxmax = std::max(max0(fi), max1(fi));
    double minmin = std::min(min0(fi), min1(fi));
    lo[f] = maxmin;
    hi[f] = minmax;
    double overlap = std::max(0.0, minmax - maxmin);
    double range = maxmax - minmin;
    double ratio = overlap / range;
    if (!std::isnan(ratio)) product *= ratio;
  }
  out.f2 = product;

  double f3 = kInf;
  for (std::size_t f = 0; f < d; ++f) {
    std::size_t inside = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double v = s.x(i, f);
      if (v >= lo[f] && v <= hi[f]) ++inside;
    }
    f3 = std::min(f3, static_cast<double>(inside) / static_cast<double>(n));
  }
  out.f3 = f3;
  return out;
}

LinearityMeasures linearity_measures(const Sample& s) {
  validate_sample(s);
  auto svm = train_linear_svm(s.x, s.y);
  const std::size_t n = s.size();
  double wnorm = 0;
  for (double w : svm.weights) wnorm += w * w;
  wnorm = std::sqrt(wnorm);

  std::size_t errors = 0;
  double distance = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dv = svm.decision(s.x.row(i));
    std::uint8_t pred = dv > 0 ? 1 : 0;
    if (pred != s.y[i]) {
      ++errors;
      distance += wnorm > 0 ? std::abs(dv) / wnorm : kInf;
    }
  }
  LinearityMeasures out{};
  double sed = distance / static_cast<double>(n);
  out.l1 = std::isinf(sed) ? 1.0 : sed / (1.0 + sed);
  out.l2 = static_cast<double>(errors) / static_cast<double>(n);
  return out;
}

namespace {

struct Forest {
  double weight = 0;
  std::size_t cross_edges = 0;
};

// Prim over the complete Euclidean graph, skipping zero-length pairs.
Forest spanning_forest(const Sample& s) {
  const std::size_t n = s.size();
  std::vector<double> key(n, kInf);
  std::vector<std::size_t> parent(n, n);
  std::vector<char> done(n, 0);
  Forest out;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t u = n;
    double best = kInf;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && key[v] < best) {
        best = key[v];
        u = v;
      }
    }
    if (u == n) {
      // Start a new tree at the first unvisited vertex.
      for (std::size_t v = 0; v < n; ++v)
        if (!done[v]) {
          u = v;
          break;
        }
    } else {
      out.weight += key[u];
      if (s.y[u] != s.y[parent[u]]) ++out.cross_edges;
    }
    done[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v]) continue;
      double d = euclidean(s.x, u, v);
      if (d > 0 && d < key[v]) {
        key[v] = d;
        parent[v] = u;
      }
    }
  }
  return out;
}

double n2_from(const Sample& s, const std::vector<RowStats>& rows) {
  auto counts = class_counts(s.y);
  double intra = 0, extra = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    std::size_t own = counts[s.y[i] ? 1 : 0];
    std::size_t enemies = counts[s.y[i] ? 0 : 1];
    if (own >= 2) intra += rows[i].nearest_friend;
    if (enemies >= 2) extra += rows[i].second_enemy;
  }
  if (extra == 0.0) return 1.0;
  double r = intra / extra;
  return r / (1.0 + r);
}

double n3_from(const Sample& s, const std::vector<RowStats>& rows) {
  std::size_t errors = 0;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s.y[rows[i].nearest_other_idx] != s.y[i]) ++errors;
  return static_cast<double>(errors) / static_cast<double>(s.size());
}

double lsc_from(const Sample& s, const std::vector<RowStats>& rows) {
  const std::size_t n = s.size();
  std::vector<std::size_t> local(n, 0);
  parallel_for(n, [&](std::size_t i) {
    std::size_t c = 0;
    double ne = rows[i].nearest_enemy;
    for (std::size_t j = 0; j < n; ++j)
      if (euclidean(s.x, i, j) < ne) ++c;
    local[i] = c;
  }, 16);
  double total = static_cast<double>(std::accumulate(local.begin(), local.end(), std::size_t{0}));
  return 1.0 - total / (static_cast<double>(n) * static_cast<double>(n));
}

double t1_from(const Sample& s, const std::vector<RowStats>& rows) {
  const std::size_t n = s.size();
  std::vector<double> radius(n, kNaN);
  std::vector<char> known(n, 0);
  std::vector<std::size_t> chain;
  for (std::size_t start = 0; start < n; ++start) {
    if (known[start]) continue;
    chain.clear();
    std::size_t i = start;
    // Follow nearest-enemy links until a mutual pair or a known radius.
    while (!known[i]) {
      std::size_t j = rows[i].nearest_enemy_idx;
      if (rows[j].nearest_enemy_idx == i) {
        radius[i] = rows[i].nearest_enemy / 2.0;
        known[i] = 1;
        break;
      }
      chain.push_back(i);
      i = j;
    }
    while (!chain.empty()) {
      std::size_t k = chain.back();
      chain.pop_back();
      radius[k] = rows[k].nearest_enemy - radius[rows[k].nearest_enemy_idx];
      known[k] = 1;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (radius[a] != radius[b]) return radius[a] > radius[b];
    return a > b;
  });

  std::vector<char> absorbed(n, 0), covered(n, 0);
  std::size_t covered_count = 0;
  std::size_t spheres = 0;
  auto cover = [&](std::size_t k) {
    if (!covered[k]) {
      covered[k] = 1;
      ++covered_count;
    }
  };
  for (std::size_t c : order) {
    if (absorbed[c]) continue;
    double r = radius[c];
    for (std::size_t j = 0; j < n; ++j) {
      if (s.y[j] != s.y[c]) continue;
      if (euclidean(s.x, c, j) < r) {
        absorbed[j] = 1;
        cover(j);
      }
    }
    ++spheres;
    cover(c);
    if (covered_count == n) break;
  }
  return static_cast<double>(spheres) / static_cast<double>(n);
}

}  // namespace

double measure_n1(const Sample& s) {
  validate_sample(s);
  auto f = spanning_forest(s);
  return static_cast<double>(f.cross_edges) / 2.0 / static_cast<double>(s.size());
}

double mst_weight(const Sample& s) { return spanning_forest(s).weight; }

double measure_n2(const Sample& s) {
  validate_sample(s);
  return n2_from(s, row_stats(s));
}

double measure_n3(const Sample& s) {
  validate_sample(s);
  return n3_from(s, row_stats(s));
}

double measure_lsc(const Sample& s) {
  validate_sample(s);
  return lsc_from(s, row_stats(s));
}

double measure_t1(const Sample& s) {
  validate_sample(s);
  return t1_from(s, row_stats(s));
}

double measure_n4(const Sample& s, std::uint32_t seed) {
  validate_sample(s);
  const std::size_t n = s.size();
  const std::size_t d = s.x.cols;
  LegacyRandom rng(seed);

  std::vector<std::array<std::size_t, 2>> pairs;
  std::vector<std::uint8_t> target;
  pairs.reserve(n);
  for (std::uint8_t cls : {std::uint8_t{0}, std::uint8_t{1}}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (s.y[i] == cls) members.push_back(i);
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members.size() < 2) {
        pairs.push_back({members[0], members[0]});
      } else {
        auto pick = rng.choice_without_replacement(members.size(), 2);
        pairs.push_back({members[pick[0]], members[pick[1]]});
      }
      target.push_back(cls);
    }
  }
  std::vector<double> t(pairs.size());
  for (auto& v : t) v = rng.random_sample();

  const std::size_t k = std::min<std::size_t>(5, n);
  std::vector<std::uint8_t> wrong(pairs.size(), 0);
  parallel_for(pairs.size(), [&](std::size_t p) {
    std::vector<double> point(d);
    for (std::size_t f = 0; f < d; ++f) {
      double a = s.x(pairs[p][0], f);
      double b = s.x(pairs[p][1], f);
      point[f] = b + t[p] * (a - b);
    }
    // k smallest (distance, index), kept sorted.
    std::vector<std::pair<double, std::size_t>> best;
    best.reserve(k + 1);
    for (std::size_t j = 0; j < n; ++j) {
      double ss = 0;
      for (std::size_t f = 0; f < d; ++f) {
        double diff = point[f] - s.x(j, f);
        ss += diff * diff;
      }
      double dist = std::sqrt(ss);
      if (best.size() == k && dist >= best.back().first) continue;
      auto pos = std::upper_bound(best.begin(), best.end(), std::make_pair(dist, j));
      best.insert(pos, {dist, j});
      if (best.size() > k) best.pop_back();
    }
    std::size_t ones = 0;
    for (const auto& b : best) ones += s.y[b.second];
    std::uint8_t pred = 2 * ones > best.size() ? 1 : 0;
    wrong[p] = pred != target[p];
  }, 16);
  double errors = static_cast<double>(std::accumulate(wrong.begin(), wrong.end(), std::size_t{0}));
  return errors / static_cast<double>(pairs.size());
}

NeighborhoodMeasures neighborhood_measures(const Sample& s, std::uint32_t seed) {
  validate_sample(s);
  auto rows = row_stats(s);
  NeighborhoodMeasures out{};
  auto forest = spanning_forest(s);
  out.n1 = static_cast<double>(forest.cross_edges) / 2.0 / static_cast<double>(s.size());
  out.n2 = n2_from(s, rows);
  out.n3 = n3_from(s, rows);
  out.n4 = measure_n4(s, seed);
  out.t1 = t1_from(s, rows);
  out.lsc = lsc_from(s, rows);
  return out;
}

NetworkMeasures network_measures(const Sample& s, double epsilon) {
  validate_sample(s);
  const std::size_t n = s.size();
  BitGraph g = epsilon_graph(s, epsilon);
  const double nd = static_cast<double>(n);

  std::vector<std::size_t> degree(n);
  for (std::size_t i = 0; i < n; ++i) degree[i] = g.degree(i);
  double edges = static_cast<double>(std::accumulate(degree.begin(), degree.end(), std::size_t{0}));

  NetworkMeasures out{};
  out.den = 1.0 - edges / (nd * (nd - 1.0));

  // Local clustering: links among neighbours over k(k-1), both directions.
  std::vector<double> local(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    std::size_t k = degree[i];
    if (k < 2) return;
    const auto* ri = g.row(i);
    std::size_t links = 0;
    g.for_each_neighbor(i, [&](std::size_t v) {
      const auto* rv = g.row(v);
      for (std::size_t w = 0; w < g.words(); ++w) links += static_cast<std::size_t>(std::popcount(ri[w] & rv[w]));
    });
    local[i] = static_cast<double>(links) / (static_cast<double>(k) * static_cast<double>(k - 1));
  }, 16);
  out.cls = 1.0 - std::accumulate(local.begin(), local.end(), 0.0) / nd;

  // Hub scores: principal eigenvector of A A^T (= A^2 here) by power
  // iteration from the degree vector, scaled to a maximum of 1.
  std::vector<double> v(n), tmp(n), next(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(degree[i]);
  double vmax = *std::max_element(v.begin(), v.end());
  double hub_sum = 0.0;
  if (vmax > 0) {
    for (auto& x : v) x /= vmax;
    auto multiply = [&](const std::vector<double>& in, std::vector<double>& outv) {
      parallel_for(n, [&](std::size_t i) {
        double acc = 0;
        g.for_each_neighbor(i, [&](std::size_t j) { acc += in[j]; });
        outv[i] = acc;
      }, 64);
    };
    for (int it = 0; it < 100000; ++it) {
      multiply(v, tmp);
      multiply(tmp, next);
      double m = *std::max_element(next.begin(), next.end());
      double change = 0;
      for (std::size_t i = 0; i < n; ++i) {
        next[i] /= m;
        change = std::max(change, std::abs(next[i] - v[i]));
      }
      v.swap(next);
      if (change < 1e-12) break;
    }
    hub_sum = std::accumulate(v.begin(), v.end(), 0.0);
  }
  out.hub = 1.0 - hub_sum / nd;
  return out;
}

BalanceMeasures balance_measures(const Sample& s) {
  validate_sample(s);
  auto c = class_counts(s.y);
  const double n = static_cast<double>(s.size());
  BalanceMeasures out{};
  double entropy = 0;
  double ir = 0;
  for (std::size_t k = 0; k < 2; ++k) {
    double p = static_cast<double>(c[k]) / n;
    entropy += p * std::log(p);
    ir += static_cast<double>(c[k]) / (n - static_cast<double>(c[k]));
  }
  out.c1 = 1.0 + entropy / std::log(2.0);
  out.c2 = 1.0 - 1.0 / (0.5 * ir);
  return out;
}

std::vector<std::size_t> stratified_subsample(const Labels& y, std::size_t cap, std::uint32_t seed) {
  const std::size_t n = y.size();
  std::vector<std::size_t> rows;
  if (cap == 0 || n <= cap) {
    rows.resize(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    return rows;
  }
  LegacyRandom rng(seed);
  for (std::uint8_t cls : {std::uint8_t{0}, std::uint8_t{1}}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i)
      if (y[i] == cls) members.push_back(i);
    if (members.empty()) continue;
    auto keep = static_cast<std::size_t>(
        std::llround(static_cast<double>(members.size()) * static_cast<double>(cap) / static_cast<double>(n)));
    keep = std::clamp<std::size_t>(keep, std::min<std::size_t>(2, members.size()), members.size());
    auto perm = rng.permutation(members.size());
    for (std::size_t k = 0; k < keep; ++k) rows.push_back(members[perm[k]]);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

Sample subsample(const Sample& s, const std::vector<std::size_t>& rows) {
  Sample out;
  out.scheme = s.scheme;
  out.dataset = s.dataset;
  out.x = FeatureMatrix(rows.size(), s.x.cols);
  out.y.resize(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    auto src = s.x.row(rows[k]);
    std::copy(src.begin(), src.end(), out.x.row(k).begin());
    out.y[k] = s.y[rows[k]];
  }
  return out;
}

ComplexityReport compute_complexity(const Sample& sample, const ComplexityOptions& options) {
  validate_sample(sample);
  ComplexityReport r;
  r.dataset = sample.dataset;
  r.scheme = sample.scheme;
  r.seed = options.seed;
  r.epsilon = options.epsilon;
  r.pairs = sample.size();
  r.cap = options.max_samples;
  r.easy_threshold = options.easy_threshold;

  auto rows = stratified_subsample(sample.y, options.max_samples, options.seed);
  const bool capped = rows.size() != sample.size();
  Sample reduced = capped ? subsample(sample, rows) : Sample{};
  const Sample& quad = capped ? reduced : sample;
  r.used = quad.size();

  auto f = feature_measures(sample);
  auto l = linearity_measures(sample);
  auto nb = neighborhood_measures(quad, options.seed);
  auto net = network_measures(quad, options.epsilon);
  auto c = balance_measures(sample);
  r.values = {f.f1,  f.f1v, f.f2,  f.f3,  l.l1,    l.l2,    nb.n1,   nb.n2, nb.n3,
              nb.n4, nb.t1, nb.lsc, net.den, net.cls, net.hub, c.c1, c.c2};
  return r;
}

Sample build_sample(const Dataset& dataset, SchemeTag scheme, const TokenizeOptions& tokenize) {
  if (scheme != SchemeTag::CSJS && scheme != SchemeTag::CSJS_SB)
    fail(ErrorCode::InvalidConfig, "complexity samples use CSJS or CSJS-SB features");
  FeatureScheme fs;
  fs.tag = scheme;
  fs.tokenize = tokenize;
  FeatureExtractor fx(dataset.left, dataset.right, fs);
  auto pairs = dataset.splits.merged();
  Sample s;
  s.x = fx.extract_all(pairs);
  s.y = labels_of(pairs);
  s.scheme = std::string(to_string(scheme));
  s.dataset = dataset.name;
  return s;
}

ComplexityReport complexity_profile(const Dataset& dataset, SchemeTag scheme, const ComplexityOptions& options,
                                    const TokenizeOptions& tokenize) {
  return compute_complexity(build_sample(dataset, scheme, tokenize), options);
}

}  // namespace erdiff
