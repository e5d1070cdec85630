#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erdiff/corpus.hpp"

namespace erdiff {

enum class BlockerKind { TfIdf, Embedding };

std::string_view to_string(BlockerKind kind);
std::string_view to_string(Side side);

struct BlockerConfig {
  /// Attribute compared on both sides; nullopt concatenates every attribute.
  std::optional<std::string> attribute;
  /// Stop-word removal plus stemming before tokenization.
  bool clean = false;
  std::size_t k = 1;
  /// The indexed table; every record of the other table is a query.
  Side indexed = Side::Right;
  BlockerKind kind = BlockerKind::TfIdf;

  std::string describe() const;
  bool operator==(const BlockerConfig&) const = default;
};

/// Per query record, the index records ordered by descending score with ties
/// broken by ascending id. Top-K blocking takes a prefix of every list, so
/// the candidate sets of one ranking are nested in K.
class Ranking {
 public:
  std::size_t query_count() const { return query_ids_.size(); }
  std::size_t index_count() const { return index_ids_.size(); }
  Side indexed() const { return indexed_; }

  /// Index rows in rank order for query q, truncated to `limit`.
  std::vector<std::size_t> top(std::size_t q, std::size_t limit) const;
  /// Zero-based rank of index row i for query q.
  std::size_t rank_of(std::size_t q, std::size_t i) const;
  double score(std::size_t q, std::size_t i) const;

  /// Candidate pairs (left id, right id) for top-K, sorted.
  std::vector<IdPair> candidates(std::size_t k) const;
  /// min(K, |index|) candidates per query.
  std::size_t candidate_count(std::size_t k) const;

  const std::vector<std::string>& query_ids() const { return query_ids_; }
  const std::vector<std::string>& index_ids() const { return index_ids_; }
  std::optional<std::size_t> query_row(std::string_view id) const;
  std::optional<std::size_t> index_row(std::string_view id) const;

 private:
  friend Ranking rank_records(const Table&, const Table&, const BlockerConfig&, const EmbeddingStore*);

  struct Hit {
    std::size_t row;
    double score;
  };

  Side indexed_ = Side::Right;
  std::vector<std::string> query_ids_;
  std::vector<std::string> index_ids_;
  // Index rows ordered by id; zero-score records follow the scored hits in
  // this order.
  std::vector<std::size_t> by_id_;
  std::vector<std::size_t> id_position_;
  // Per query: records with a positive score, in rank order.
  std::vector<std::vector<Hit>> hits_;
};

/// Scores every (query, index) pair under `config` (K is ignored). TF-IDF
/// uses raw term counts, smoothed idf ln((1+N)/(1+df))+1 over both tables and
/// L2-normalized vectors. The embedding blocker ranks by clamped vector
/// cosine and needs `embeddings`. Throws EmptyInput, InvalidConfig or
/// MissingEmbedding.
Ranking rank_records(const Table& left, const Table& right, const BlockerConfig& config,
                     const EmbeddingStore* embeddings = nullptr);

/// Top-K candidate pairs (left id, right id), sorted.
std::vector<IdPair> block_topk(const Table& left, const Table& right, const BlockerConfig& config,
                               const EmbeddingStore* embeddings = nullptr);

struct BlockingOutcome {
  std::vector<IdPair> candidates;
  double pc = 0;
  double pq = 0;
  std::size_t candidate_count = 0;
  std::size_t positives = 0;
  std::size_t gold_size = 0;

  /// |P| / |C|.
  double imbalance_ratio() const;
};

/// PC = |C ∩ G| / |G|, PQ = |C ∩ G| / |C| (0 when C is empty). Duplicate
/// candidates count once. Throws EmptyGold.
BlockingOutcome evaluate_blocking(std::span<const IdPair> candidates, const GroundTruth& gold);
/// Same bookkeeping from counts alone; `candidates` is left empty.
BlockingOutcome evaluate_blocking(std::size_t candidate_count, std::size_t positives, std::size_t gold_size);

struct ConfigSpace {
  /// nullopt entries mean all attributes concatenated.
  std::vector<std::optional<std::string>> attributes;
  std::vector<bool> clean{false, true};
  std::vector<Side> indexed{Side::Right, Side::Left};
  BlockerKind kind = BlockerKind::TfIdf;

  /// Every attribute both schemas share, plus all-concatenated.
  static ConfigSpace defaults(const Table& left, const Table& right);
  /// Combinations in enumeration order (attribute, then clean, then side),
  /// each with k = 1.
  std::vector<BlockerConfig> combinations() const;
};

struct GridEntry {
  BlockerConfig config;
  /// Smallest K reaching the recall bar; nullopt when none does.
  std::optional<std::size_t> k;
  double pc = 0;
  double pq = 0;
  std::size_t candidate_count = 0;
};

struct GridSearchResult {
  BlockerConfig config;
  BlockingOutcome outcome;
  /// One entry per combination, in enumeration order.
  std::vector<GridEntry> entries;
};

/// Smallest K with PC >= recall_min, by doubling then bisection over a fixed
/// ranking. nullopt when even K = |index| falls short.
std::optional<std::size_t> minimal_k(const Ranking& ranking, const GroundTruth& gold, double recall_min);

/// For each combination the minimal K; the winner has the fewest candidates,
/// then the higher PQ, then comes first in enumeration order. Throws
/// RecallUnreachable, EmptyGold, InvalidConfig.
GridSearchResult grid_search(const Table& left, const Table& right, const GroundTruth& gold, double recall_min = 0.9,
                             const std::optional<ConfigSpace>& space = std::nullopt,
                             const EmbeddingStore* embeddings = nullptr);

}  // namespace erdiff
