#include "erdiff/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "erdiff/cleaning.hpp"
#include "erdiff/errors.hpp"
#include "erdiff/features.hpp"
#include "erdiff/parallel.hpp"

namespace erdiff {

std::string_view to_string(BlockerKind kind) { return kind == BlockerKind::TfIdf ? "tfidf-topk" : "embedding-topk"; }

std::string_view to_string(Side side) { return side == Side::Left ? "left" : "right"; }

std::string BlockerConfig::describe() const {
  std::string out = attribute ? *attribute : std::string("all");
  out += clean ? " clean" : " raw";
  out += " K=" + std::to_string(k);
  out += " indexed=" + std::string(to_string(indexed));
  out += " " + std::string(to_string(kind));
  return out;
}

namespace {

using SparseVector = std::vector<std::pair<std::uint32_t, double>>;

std::string record_text(const Record& record, std::optional<std::size_t> attr) {
  if (attr) {
    const auto& v = record.values[*attr];
    return v ? *v : std::string();
  }
  std::string out;
  for (const auto& v : record.values) {
    if (!v) continue;
    if (!out.empty()) out += ' ';
    out += *v;
  }
  return out;
}

std::optional<std::size_t> resolve_attribute(const Table& table, const std::optional<std::string>& attribute) {
  if (!attribute) return std::nullopt;
  auto idx = table.attribute_index(*attribute);
  if (!idx) fail(ErrorCode::InvalidConfig, "attribute '" + *attribute + "' not in table " + table.name());
  return idx;
}

std::vector<std::string> document_tokens(const Record& record, std::optional<std::size_t> attr, bool clean) {
  std::string text = record_text(record, attr);
  return token_sequence(clean ? clean_text(text) : text);
}

// Term ids follow first appearance over (left, right); both tables feed df.
std::pair<std::vector<SparseVector>, std::vector<SparseVector>> tfidf_vectors(const Table& left, const Table& right,
                                                                              const BlockerConfig& config) {
  auto left_attr = resolve_attribute(left, config.attribute);
  auto right_attr = resolve_attribute(right, config.attribute);

  std::unordered_map<std::string, std::uint32_t> vocabulary;
  std::vector<std::size_t> df;
  auto to_counts = [&](const Table& table, std::optional<std::size_t> attr) {
    std::vector<SparseVector> docs(table.size());
    for (std::size_t r = 0; r < table.size(); ++r) {
      std::vector<std::uint32_t> ids;
      for (auto& token : document_tokens(table[r], attr, config.clean)) {
        auto [it, inserted] = vocabulary.try_emplace(std::move(token), static_cast<std::uint32_t>(vocabulary.size()));
        if (inserted) df.push_back(0);
        ids.push_back(it->second);
      }
      std::sort(ids.begin(), ids.end());
      for (std::size_t i = 0; i < ids.size();) {
        std::size_t j = i;
        while (j < ids.size() && ids[j] == ids[i]) ++j;
        docs[r].emplace_back(ids[i], static_cast<double>(j - i));
        ++df[ids[i]];
        i = j;
      }
    }
    return docs;
  };
  auto left_docs = to_counts(left, left_attr);
  auto right_docs = to_counts(right, right_attr);

  const double n = static_cast<double>(left.size() + right.size());
  std::vector<double> idf(df.size());
  for (std::size_t t = 0; t < df.size(); ++t) idf[t] = std::log((1.0 + n) / (1.0 + static_cast<double>(df[t]))) + 1.0;

  auto weigh = [&](std::vector<SparseVector>& docs) {
    for (auto& doc : docs) {
      double norm = 0;
      for (auto& [t, w] : doc) {
        w *= idf[t];
        norm += w * w;
      }
      norm = std::sqrt(norm);
      if (norm > 0) {
        for (auto& entry : doc) entry.second /= norm;
      }
    }
  };
  weigh(left_docs);
  weigh(right_docs);
  return {std::move(left_docs), std::move(right_docs)};
}

double clamped_cosine(const std::vector<double>& a, const std::vector<double>& b) {
  double dot = 0, na = 0, nb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0 || nb == 0) return 0;
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
}

std::string embedding_key(Side side, const std::string& id, const std::optional<std::string>& attribute) {
  return attribute ? EmbeddingStore::key(side, id, *attribute) : EmbeddingStore::key(side, id);
}

}  // namespace

Ranking rank_records(const Table& left, const Table& right, const BlockerConfig& config,
                     const EmbeddingStore* embeddings) {
  const Table& query = config.indexed == Side::Right ? left : right;
  const Table& index = config.indexed == Side::Right ? right : left;
  if (index.empty()) fail(ErrorCode::EmptyInput, "index table " + index.name() + " is empty");

  Ranking ranking;
  ranking.indexed_ = config.indexed;
  for (const auto& r : query) ranking.query_ids_.push_back(r.id);
  for (const auto& r : index) ranking.index_ids_.push_back(r.id);

  const std::size_t ni = index.size();
  ranking.by_id_.resize(ni);
  std::iota(ranking.by_id_.begin(), ranking.by_id_.end(), std::size_t{0});
  std::sort(ranking.by_id_.begin(), ranking.by_id_.end(),
            [&](std::size_t a, std::size_t b) { return ranking.index_ids_[a] < ranking.index_ids_[b]; });
  ranking.id_position_.resize(ni);
  for (std::size_t p = 0; p < ni; ++p) ranking.id_position_[ranking.by_id_[p]] = p;

  ranking.hits_.resize(query.size());
  auto order = [&](std::vector<Ranking::Hit>& hits) {
    std::sort(hits.begin(), hits.end(), [&](const Ranking::Hit& a, const Ranking::Hit& b) {
      if (a.score != b.score) return a.score > b.score;
      return ranking.id_position_[a.row] < ranking.id_position_[b.row];
    });
  };

  if (config.kind == BlockerKind::Embedding) {
    if (!embeddings) fail(ErrorCode::MissingEmbedding, "embedding blocker needs an embedding store");
    resolve_attribute(left, config.attribute);
    resolve_attribute(right, config.attribute);
    Side query_side = config.indexed == Side::Right ? Side::Left : Side::Right;
    std::vector<const std::vector<double>*> index_vectors(ni);
    for (std::size_t i = 0; i < ni; ++i) {
      index_vectors[i] = &embeddings->lookup(embedding_key(config.indexed, index[i].id, config.attribute));
    }
    std::vector<const std::vector<double>*> query_vectors(query.size());
    for (std::size_t q = 0; q < query.size(); ++q) {
      query_vectors[q] = &embeddings->lookup(embedding_key(query_side, query[q].id, config.attribute));
    }
    parallel_for(
        query.size(),
        [&](std::size_t q) {
          auto& hits = ranking.hits_[q];
          for (std::size_t i = 0; i < ni; ++i) {
            double s = clamped_cosine(*query_vectors[q], *index_vectors[i]);
            if (s > 0) hits.push_back({i, s});
          }
          order(hits);
        },
        8);
    return ranking;
  }

  auto [left_docs, right_docs] = tfidf_vectors(left, right, config);
  const auto& query_docs = config.indexed == Side::Right ? left_docs : right_docs;
  const auto& index_docs = config.indexed == Side::Right ? right_docs : left_docs;

  std::unordered_map<std::uint32_t, std::vector<std::pair<std::size_t, double>>> postings;
  for (std::size_t i = 0; i < ni; ++i) {
    for (const auto& [t, w] : index_docs[i]) postings[t].emplace_back(i, w);
  }

  parallel_for(
      query.size(),
      [&](std::size_t q) {
        // Accumulating in ascending term order keeps scores of identical
        // index documents bit-identical.
        std::unordered_map<std::size_t, double> acc;
        for (const auto& [t, wq] : query_docs[q]) {
          auto it = postings.find(t);
          if (it == postings.end()) continue;
          for (const auto& [i, wi] : it->second) acc[i] += wq * wi;
        }
        auto& hits = ranking.hits_[q];
        for (const auto& [i, s] : acc) {
          if (s > 0) hits.push_back({i, s});
        }
        order(hits);
      },
      8);
  return ranking;
}

std::vector<std::size_t> Ranking::top(std::size_t q, std::size_t limit) const {
  const auto& hits = hits_[q];
  std::vector<std::size_t> out;
  limit = std::min(limit, index_ids_.size());
  out.reserve(limit);
  for (std::size_t h = 0; h < hits.size() && out.size() < limit; ++h) out.push_back(hits[h].row);
  if (out.size() < limit) {
    std::vector<bool> taken(index_ids_.size(), false);
    for (const auto& hit : hits) taken[hit.row] = true;
    for (std::size_t p = 0; p < by_id_.size() && out.size() < limit; ++p) {
      if (!taken[by_id_[p]]) out.push_back(by_id_[p]);
    }
  }
  return out;
}

std::size_t Ranking::rank_of(std::size_t q, std::size_t i) const {
  const auto& hits = hits_[q];
  std::size_t earlier_hits = 0;
  for (std::size_t h = 0; h < hits.size(); ++h) {
    if (hits[h].row == i) return h;
    if (id_position_[hits[h].row] < id_position_[i]) ++earlier_hits;
  }
  return hits.size() + id_position_[i] - earlier_hits;
}

double Ranking::score(std::size_t q, std::size_t i) const {
  for (const auto& hit : hits_[q]) {
    if (hit.row == i) return hit.score;
  }
  return 0;
}

std::size_t Ranking::candidate_count(std::size_t k) const {
  return query_ids_.size() * std::min(k, index_ids_.size());
}

std::vector<IdPair> Ranking::candidates(std::size_t k) const {
  std::vector<IdPair> out;
  out.reserve(candidate_count(k));
  for (std::size_t q = 0; q < query_ids_.size(); ++q) {
    for (std::size_t i : top(q, k)) {
      if (indexed_ == Side::Right) {
        out.emplace_back(query_ids_[q], index_ids_[i]);
      } else {
        out.emplace_back(index_ids_[i], query_ids_[q]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::size_t> Ranking::query_row(std::string_view id) const {
  auto it = std::find(query_ids_.begin(), query_ids_.end(), id);
  if (it == query_ids_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - query_ids_.begin());
}

std::optional<std::size_t> Ranking::index_row(std::string_view id) const {
  auto it = std::lower_bound(by_id_.begin(), by_id_.end(), id,
                             [&](std::size_t row, std::string_view key) { return index_ids_[row] < key; });
  if (it == by_id_.end() || index_ids_[*it] != id) return std::nullopt;
  return *it;
}

std::vector<IdPair> block_topk(const Table& left, const Table& right, const BlockerConfig& config,
                               const EmbeddingStore* embeddings) {
  if (config.k < 1) fail(ErrorCode::InvalidConfig, "K must be at least 1");
  return rank_records(left, right, config, embeddings).candidates(config.k);
}

double BlockingOutcome::imbalance_ratio() const { return erdiff::imbalance_ratio(positives, candidate_count); }

BlockingOutcome evaluate_blocking(std::size_t candidate_count, std::size_t positives, std::size_t gold_size) {
  if (gold_size == 0) fail(ErrorCode::EmptyGold, "ground truth is empty");
  BlockingOutcome out;
  out.candidate_count = candidate_count;
  out.positives = positives;
  out.gold_size = gold_size;
  out.pc = static_cast<double>(positives) / static_cast<double>(gold_size);
  out.pq = candidate_count == 0 ? 0.0 : static_cast<double>(positives) / static_cast<double>(candidate_count);
  return out;
}

BlockingOutcome evaluate_blocking(std::span<const IdPair> candidates, const GroundTruth& gold) {
  if (gold.empty()) fail(ErrorCode::EmptyGold, "ground truth is empty");
  std::vector<IdPair> unique(candidates.begin(), candidates.end());
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::size_t hits = 0;
  for (const auto& pair : unique) hits += gold.contains(pair) ? 1 : 0;
  auto out = evaluate_blocking(unique.size(), hits, gold.size());
  out.candidates = std::move(unique);
  return out;
}

ConfigSpace ConfigSpace::defaults(const Table& left, const Table& right) {
  ConfigSpace space;
  for (const auto& attribute : left.schema()) {
    if (right.attribute_index(attribute)) space.attributes.emplace_back(attribute);
  }
  space.attributes.emplace_back(std::nullopt);
  return space;
}

std::vector<BlockerConfig> ConfigSpace::combinations() const {
  std::vector<BlockerConfig> out;
  for (const auto& attribute : attributes) {
    for (bool c : clean) {
      for (Side side : indexed) out.push_back({attribute, c, 1, side, kind});
    }
  }
  return out;
}

namespace {

// Zero-based rank of every gold pair under the ranking, sorted ascending.
// PC at K is then the share of ranks below K.
std::vector<std::size_t> gold_ranks(const Ranking& ranking, const GroundTruth& gold) {
  std::unordered_map<std::string_view, std::size_t> query_rows;
  for (std::size_t q = 0; q < ranking.query_count(); ++q) query_rows.emplace(ranking.query_ids()[q], q);
  std::vector<std::size_t> ranks;
  ranks.reserve(gold.size());
  for (const auto& [l, r] : gold.pairs()) {
    const std::string& qid = ranking.indexed() == Side::Right ? l : r;
    const std::string& iid = ranking.indexed() == Side::Right ? r : l;
    auto q = query_rows.find(qid);
    auto i = ranking.index_row(iid);
    if (q == query_rows.end() || !i) {
      ranks.push_back(std::numeric_limits<std::size_t>::max());
      continue;
    }
    ranks.push_back(ranking.rank_of(q->second, *i));
  }
  std::sort(ranks.begin(), ranks.end());
  return ranks;
}

std::size_t hits_at(const std::vector<std::size_t>& sorted_ranks, std::size_t k) {
  return static_cast<std::size_t>(std::lower_bound(sorted_ranks.begin(), sorted_ranks.end(), k) - sorted_ranks.begin());
}

bool meets(std::size_t hits, std::size_t gold_size, double recall_min) {
  return static_cast<double>(hits) / static_cast<double>(gold_size) >= recall_min;
}

std::optional<std::size_t> search_k(const std::vector<std::size_t>& ranks, std::size_t gold_size,
                                    std::size_t index_size, double recall_min) {
  auto ok = [&](std::size_t k) { return meets(hits_at(ranks, k), gold_size, recall_min); };
  std::size_t hi = 1;
  while (hi < index_size && !ok(hi)) hi *= 2;
  hi = std::min(hi, index_size);
  if (!ok(hi)) return std::nullopt;
  std::size_t lo = hi / 2;  // fails, or 0
  if (hi == 1) return 1;
  while (hi - lo > 1) {
    std::size_t mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace

std::optional<std::size_t> minimal_k(const Ranking& ranking, const GroundTruth& gold, double recall_min) {
  if (gold.empty()) fail(ErrorCode::EmptyGold, "ground truth is empty");
  return search_k(gold_ranks(ranking, gold), gold.size(), ranking.index_count(), recall_min);
}

GridSearchResult grid_search(const Table& left, const Table& right, const GroundTruth& gold, double recall_min,
                             const std::optional<ConfigSpace>& space, const EmbeddingStore* embeddings) {
  if (gold.empty()) fail(ErrorCode::EmptyGold, "ground truth is empty");
  ConfigSpace chosen = space ? *space : ConfigSpace::defaults(left, right);
  auto combos = chosen.combinations();
  if (combos.empty()) fail(ErrorCode::InvalidConfig, "blocker configuration space is empty");

  GridSearchResult result;
  result.entries.resize(combos.size());
  parallel_for(
      combos.size(),
      [&](std::size_t c) {
        GridEntry& entry = result.entries[c];
        entry.config = combos[c];
        Ranking ranking = rank_records(left, right, combos[c], embeddings);
        auto ranks = gold_ranks(ranking, gold);
        entry.k = search_k(ranks, gold.size(), ranking.index_count(), recall_min);
        if (!entry.k) return;
        entry.config.k = *entry.k;
        auto counts = evaluate_blocking(ranking.candidate_count(*entry.k), hits_at(ranks, *entry.k), gold.size());
        entry.pc = counts.pc;
        entry.pq = counts.pq;
        entry.candidate_count = counts.candidate_count;
      },
      1);

  const GridEntry* best = nullptr;
  for (const auto& entry : result.entries) {
    if (!entry.k) continue;
    if (!best || entry.candidate_count < best->candidate_count ||
        (entry.candidate_count == best->candidate_count && entry.pq > best->pq)) {
      best = &entry;
    }
  }
  if (!best) {
    fail(ErrorCode::RecallUnreachable, "no blocker configuration reaches recall " + std::to_string(recall_min));
  }
  result.config = best->config;
  result.outcome = evaluate_blocking(block_topk(left, right, result.config, embeddings), gold);
  return result;
}

}  // namespace erdiff
