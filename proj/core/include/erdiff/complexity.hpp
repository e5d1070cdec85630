#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "erdiff/corpus.hpp"
#include "erdiff/features.hpp"
#include "erdiff/linearity.hpp"

namespace erdiff {

/// Per-pair features with binary labels.
struct Sample {
  FeatureMatrix x;
  Labels y;
  std::string scheme;
  std::string dataset;

  std::size_t size() const { return y.size(); }
};

/// Throws InvalidSample unless n >= 2, d >= 1 and both classes occur.
void validate_sample(const Sample& sample);

inline constexpr std::size_t kMeasureCount = 17;
inline constexpr std::array<std::string_view, kMeasureCount> kMeasureNames{
    "f1", "f1v", "f2", "f3", "l1", "l2", "n1", "n2", "n3", "n4", "t1", "lsc", "den", "cls", "hub", "c1", "c2"};

/// Index of a measure name in kMeasureNames. Throws InvalidConfig.
std::size_t measure_index(std::string_view name);

struct ComplexityOptions {
  /// Edge threshold on normalized Gower distance for the network measures.
  double epsilon = 0.15;
  std::uint32_t seed = 42;
  /// Larger samples are stratified-downsampled before the quadratic measures;
  /// 0 disables the cap.
  std::size_t max_samples = 20000;
  double easy_threshold = 0.4;
};

struct ComplexityReport {
  std::string dataset;
  std::string scheme;
  std::uint32_t seed = 0;
  double epsilon = 0.15;
  std::size_t pairs = 0;
  /// Rows actually used after subsampling.
  std::size_t used = 0;
  std::size_t cap = 0;
  std::array<double, kMeasureCount> values{};
  double easy_threshold = 0.4;

  double value(std::string_view name) const { return values[measure_index(name)]; }
  double mean() const;
  bool easy() const { return mean() < easy_threshold; }
};

/// Reference Gower distance: per-feature values scaled by the feature maximum
/// and differences divided by the scaled range, averaged over features and
/// rounded to single precision. The diagonal is 0.
std::vector<float> gower_distances(const FeatureMatrix& x);

struct FeatureMeasures {
  double f1, f1v, f2, f3;
};
struct LinearityMeasures {
  double l1, l2;
};
struct NeighborhoodMeasures {
  double n1, n2, n3, n4, t1, lsc;
};
struct NetworkMeasures {
  double den, cls, hub;
};
struct BalanceMeasures {
  double c1, c2;
};

FeatureMeasures feature_measures(const Sample& sample);
LinearityMeasures linearity_measures(const Sample& sample);
NeighborhoodMeasures neighborhood_measures(const Sample& sample, std::uint32_t seed);
NetworkMeasures network_measures(const Sample& sample, double epsilon = 0.15);
BalanceMeasures balance_measures(const Sample& sample);

/// Individual neighborhood measures, exposed for testing.
double measure_n1(const Sample& sample);
double measure_n2(const Sample& sample);
double measure_n3(const Sample& sample);
double measure_n4(const Sample& sample, std::uint32_t seed);
double measure_t1(const Sample& sample);
double measure_lsc(const Sample& sample);
/// Total weight of the minimum spanning forest used by n1 (zero-length pairs
/// are not edges).
double mst_weight(const Sample& sample);

/// Rows kept by the stratified, seeded cap (sorted ascending); every row when
/// the sample is within the cap.
std::vector<std::size_t> stratified_subsample(const Labels& y, std::size_t cap, std::uint32_t seed);
Sample subsample(const Sample& sample, const std::vector<std::size_t>& rows);

ComplexityReport compute_complexity(const Sample& sample, const ComplexityOptions& options = {});

/// Features of train, validation and test merged under CSJS or CSJS_SB.
Sample build_sample(const Dataset& dataset, SchemeTag scheme = SchemeTag::CSJS,
                    const TokenizeOptions& tokenize = {});
ComplexityReport complexity_profile(const Dataset& dataset, SchemeTag scheme = SchemeTag::CSJS,
                                    const ComplexityOptions& options = {}, const TokenizeOptions& tokenize = {});

}  // namespace erdiff
