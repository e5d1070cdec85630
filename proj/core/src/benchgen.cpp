#include "erdiff/benchgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <nlohmann/json.hpp>

#include "erdiff/cleaning.hpp"
#include "erdiff/errors.hpp"
#include "erdiff/esde.hpp"
#include "erdiff/forest.hpp"
#include "erdiff/legacy_random.hpp"
#include "erdiff/version.hpp"

namespace erdiff {

SplitSizes split_sizes(std::size_t n) {
  SplitSizes s;
  s.train = static_cast<std::size_t>(std::llround(0.6 * static_cast<double>(n)));
  s.validation = static_cast<std::size_t>(std::llround(0.2 * static_cast<double>(n)));
  s.test = n - s.train - s.validation;
  return s;
}

LabeledPairSet split_candidates(std::span<const IdPair> candidates, const GroundTruth& gold, std::uint32_t seed) {
  if (candidates.size() < 5) {
    fail(ErrorCode::TooFewCandidates, "need at least 5 candidate pairs, got " + std::to_string(candidates.size()));
  }
  std::vector<IdPair> pairs(candidates.begin(), candidates.end());
  std::sort(pairs.begin(), pairs.end());
  LegacyRandom rng(seed);
  rng.shuffle(pairs);

  auto sizes = split_sizes(pairs.size());
  LabeledPairSet out;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    LabeledPair p{pairs[i].first, pairs[i].second, gold.contains(pairs[i])};
    if (i < sizes.train) {
      out.train.push_back(std::move(p));
    } else if (i < sizes.train + sizes.validation) {
      out.validation.push_back(std::move(p));
    } else {
      out.test.push_back(std::move(p));
    }
  }
  return out;
}

namespace {

BundleProfile profile_bundle(const Dataset& dataset, const GenerateOptions& options) {
  BundleProfile p;
  p.cs = degree_of_linearity(dataset, SimilarityMeasure::CS);
  p.js = degree_of_linearity(dataset, SimilarityMeasure::JS);
  ComplexityOptions copts;
  copts.seed = options.seed;
  p.complexity = complexity_profile(dataset, SchemeTag::CSJS, copts);

  bool same_schema = dataset.left.schema() == dataset.right.schema();
  for (SchemeTag tag : esde_schemes()) {
    if (is_embedding_scheme(tag) && !options.embeddings) continue;
    if (is_schema_based(tag) && !same_schema) continue;
    FeatureScheme scheme;
    scheme.tag = tag;
    scheme.embeddings = options.embeddings;
    p.results.push_back(esde_run(dataset, scheme).result);
  }
  FeatureScheme baseline;
  baseline.tag = same_schema ? SchemeTag::SB : SchemeTag::SA;
  p.results.push_back(baseline_run(dataset, baseline, BaselineKind::Tree, options.seed));
  p.results.push_back(baseline_run(dataset, baseline, BaselineKind::Forest, options.seed));

  VerdictInputs inputs;
  inputs.dataset = dataset.name;
  inputs.f1_cs = p.cs.f1_max;
  inputs.f1_js = p.js.f1_max;
  inputs.complexity_mean = p.complexity.mean();
  inputs.nlb = nlb(p.results);
  inputs.lbm = lbm(p.results);
  p.verdict = verdict(inputs);
  return p;
}

}  // namespace

BenchmarkBundle generate_benchmark(const Table& left, const Table& right, const GroundTruth& gold,
                                   const GenerateOptions& options) {
  auto search = grid_search(left, right, gold, options.recall_min, options.space, options.embeddings);

  BenchmarkBundle bundle;
  bundle.config = search.config;
  bundle.outcome = std::move(search.outcome);
  bundle.grid = std::move(search.entries);
  bundle.recall_min = options.recall_min;
  bundle.seed = options.seed;
  bundle.dataset.name = options.name;
  bundle.dataset.left = left;
  bundle.dataset.right = right;
  bundle.dataset.splits = split_candidates(bundle.outcome.candidates, gold, options.seed);
  validate_splits(bundle.dataset.splits, left, right);
  if (options.profile) bundle.profile = profile_bundle(bundle.dataset, options);
  return bundle;
}

namespace {

nlohmann::json config_json(const BlockerConfig& c) {
  return {
      {"attribute", c.attribute ? nlohmann::json(*c.attribute) : nlohmann::json("all")},
      {"clean", c.clean},
      {"k", c.k},
      {"indexed", std::string(to_string(c.indexed))},
      {"query", std::string(to_string(c.indexed == Side::Right ? Side::Left : Side::Right))},
      {"blocker", std::string(to_string(c.kind))},
  };
}

nlohmann::json split_json(std::span<const LabeledPair> pairs) {
  auto c = count_labels(pairs);
  return {{"instances", c.instances}, {"positives", c.positives}, {"negatives", c.negatives}};
}

}  // namespace

std::string manifest_json(const BenchmarkBundle& bundle) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& e : bundle.grid) {
    auto entry = config_json(e.config);
    if (e.k) {
      entry["pc"] = e.pc;
      entry["pq"] = e.pq;
      entry["candidates"] = e.candidate_count;
    } else {
      entry["k"] = nullptr;
    }
    grid.push_back(std::move(entry));
  }
  nlohmann::json j = {
      {"name", bundle.dataset.name},
      {"tool", "erdiff"},
      {"version", std::string(version())},
      {"seed", bundle.seed},
      {"recall_min", bundle.recall_min},
      {"config", config_json(bundle.config)},
      {"blocking",
       {{"pc", bundle.outcome.pc},
        {"pq", bundle.outcome.pq},
        {"candidates", bundle.outcome.candidate_count},
        {"positives", bundle.outcome.positives},
        {"gold", bundle.outcome.gold_size},
        {"ir", bundle.imbalance_ratio()}}},
      {"splits",
       {{"ratio", "3:1:1"},
        {"train", split_json(bundle.dataset.splits.train)},
        {"valid", split_json(bundle.dataset.splits.validation)},
        {"test", split_json(bundle.dataset.splits.test)}}},
      {"tables", {{"left", {{"file", "tableA.csv"}, {"records", bundle.dataset.left.size()}}},
                  {"right", {{"file", "tableB.csv"}, {"records", bundle.dataset.right.size()}}}}},
      {"cleaning", {{"stop_words", std::string(kStopWordListId)}, {"stemmer", std::string(kStemmerId)}}},
      {"grid", std::move(grid)},
  };
  if (bundle.profile) {
    const auto& p = *bundle.profile;
    nlohmann::json results = nlohmann::json::array();
    for (const auto& r : p.results) results.push_back({{"matcher", r.matcher}, {"f1", r.f1}});
    j["profile"] = {
        {"linearity", {{"cs", p.cs.f1_max}, {"js", p.js.f1_max}}},
        {"complexity_mean", p.complexity.mean()},
        {"results", std::move(results)},
        {"verdict", p.verdict.overall()},
    };
  }
  return j.dump(2) + "\n";
}

void write_bundle(const BenchmarkBundle& bundle, const GroundTruth& gold, const std::filesystem::path& dir) {
  save_split(bundle.dataset, dir);
  save_gold(gold, dir / "gold.csv");
  std::ofstream out(dir / "manifest.json", std::ios::binary);
  if (!out) fail(ErrorCode::MissingFile, "cannot write " + (dir / "manifest.json").string());
  out << manifest_json(bundle);
}

}  // namespace erdiff
