#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erdiff/aggregate.hpp"
#include "erdiff/blocking.hpp"
#include "erdiff/complexity.hpp"
#include "erdiff/corpus.hpp"
#include "erdiff/linearity.hpp"
#include "erdiff/results.hpp"

namespace erdiff {

struct SplitSizes {
  std::size_t train = 0;
  std::size_t validation = 0;
  std::size_t test = 0;
};

/// round(0.6 n), round(0.2 n) and the remainder.
SplitSizes split_sizes(std::size_t n);

/// Sorts the candidates, shuffles them with the seed and cuts 3:1:1. Pairs in
/// the gold set are labeled positive. Throws TooFewCandidates below 5 pairs.
LabeledPairSet split_candidates(std::span<const IdPair> candidates, const GroundTruth& gold, std::uint32_t seed);

struct GenerateOptions {
  double recall_min = 0.9;
  std::optional<ConfigSpace> space;
  std::uint32_t seed = 42;
  std::string name = "generated";
  /// Also run linearity, complexity, ESDE and the tree baselines on the new
  /// benchmark and attach a verdict.
  bool profile = false;
  const EmbeddingStore* embeddings = nullptr;
};

struct BundleProfile {
  LinearityResult cs;
  LinearityResult js;
  ComplexityReport complexity;
  std::vector<MatcherResult> results;
  DifficultyVerdict verdict;
};

struct BenchmarkBundle {
  Dataset dataset;
  BlockerConfig config;
  BlockingOutcome outcome;
  std::vector<GridEntry> grid;
  double recall_min = 0.9;
  std::uint32_t seed = 42;
  std::optional<BundleProfile> profile;

  /// |P| / |C| of the blocking outcome.
  double imbalance_ratio() const { return outcome.imbalance_ratio(); }
};

BenchmarkBundle generate_benchmark(const Table& left, const Table& right, const GroundTruth& gold,
                                   const GenerateOptions& options = {});

/// Manifest describing a bundle: blocker config, blocking statistics, split
/// counts, seed, tool version and text-cleaning provenance.
std::string manifest_json(const BenchmarkBundle& bundle);

/// Writes the split layout (tableA/tableB/train/valid/test), gold.csv and
/// manifest.json into `dir`.
void write_bundle(const BenchmarkBundle& bundle, const GroundTruth& gold, const std::filesystem::path& dir);

}  // namespace erdiff
