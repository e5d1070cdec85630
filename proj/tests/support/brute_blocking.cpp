#include "brute_blocking.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "erdiff/cleaning.hpp"
#include "erdiff/features.hpp"

namespace erdiff::testing {

namespace {

std::vector<std::string> tokens_of(const Table& table, const Record& record, const BlockerConfig& config) {
  std::string text;
  if (config.attribute) {
    const auto& v = record.values[*table.attribute_index(*config.attribute)];
    if (v) text = *v;
  } else {
    for (const auto& v : record.values) {
      if (!v) continue;
      if (!text.empty()) text += ' ';
      text += *v;
    }
  }
  return token_sequence(config.clean ? clean_text(text) : text);
}

}  // namespace

std::vector<std::vector<double>> brute_scores(const Table& left, const Table& right, const BlockerConfig& config) {
  // Term ids by first appearance, left table before right.
  std::map<std::string, std::size_t> vocab;
  std::vector<std::vector<std::string>> docs;
  for (const Table* t : {&left, &right}) {
    for (const auto& r : *t) {
      docs.push_back(tokens_of(*t, r, config));
      for (const auto& tok : docs.back()) vocab.try_emplace(tok, vocab.size());
    }
  }
  const std::size_t v = vocab.size();
  std::vector<std::vector<double>> dense(docs.size(), std::vector<double>(v, 0.0));
  std::vector<double> df(v, 0.0);
  for (std::size_t d = 0; d < docs.size(); ++d) {
    for (const auto& tok : docs[d]) dense[d][vocab[tok]] += 1.0;
    for (std::size_t t = 0; t < v; ++t) df[t] += dense[d][t] > 0 ? 1.0 : 0.0;
  }
  const double n = static_cast<double>(docs.size());
  for (auto& row : dense) {
    double norm = 0;
    for (std::size_t t = 0; t < v; ++t) {
      row[t] *= std::log((1.0 + n) / (1.0 + df[t])) + 1.0;
      norm += row[t] * row[t];
    }
    norm = std::sqrt(norm);
    if (norm > 0)
      for (auto& w : row) w /= norm;
  }

  const bool right_indexed = config.indexed == Side::Right;
  const std::size_t nq = right_indexed ? left.size() : right.size();
  const std::size_t ni = right_indexed ? right.size() : left.size();
  auto row_of = [&](bool is_left, std::size_t r) -> const std::vector<double>& {
    return dense[is_left ? r : left.size() + r];
  };
  std::vector<std::vector<double>> scores(nq, std::vector<double>(ni, 0.0));
  for (std::size_t q = 0; q < nq; ++q) {
    const auto& a = row_of(right_indexed, q);
    for (std::size_t i = 0; i < ni; ++i) {
      const auto& b = row_of(!right_indexed, i);
      double s = 0;
      for (std::size_t t = 0; t < v; ++t) {
        if (a[t] != 0 && b[t] != 0) s += a[t] * b[t];
      }
      scores[q][i] = s;
    }
  }
  return scores;
}

namespace {

// Per query, index rows by descending score then ascending id.
struct FullRanking {
  std::vector<std::vector<std::size_t>> order;
  const Table* query;
  const Table* index;
  bool right_indexed;

  std::vector<IdPair> top(std::size_t k) const {
    std::vector<IdPair> out;
    for (std::size_t q = 0; q < order.size(); ++q) {
      for (std::size_t r = 0; r < std::min(k, order[q].size()); ++r) {
        const auto& qid = (*query)[q].id;
        const auto& iid = (*index)[order[q][r]].id;
        out.push_back(right_indexed ? IdPair{qid, iid} : IdPair{iid, qid});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

FullRanking full_ranking(const Table& left, const Table& right, const BlockerConfig& config) {
  auto scores = brute_scores(left, right, config);
  FullRanking fr;
  fr.right_indexed = config.indexed == Side::Right;
  fr.query = fr.right_indexed ? &left : &right;
  fr.index = fr.right_indexed ? &right : &left;
  for (std::size_t q = 0; q < fr.query->size(); ++q) {
    std::vector<std::size_t> order(fr.index->size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      if (scores[q][a] != scores[q][b]) return scores[q][a] > scores[q][b];
      return (*fr.index)[a].id < (*fr.index)[b].id;
    });
    fr.order.push_back(std::move(order));
  }
  return fr;
}

}  // namespace

std::vector<IdPair> brute_topk(const Table& left, const Table& right, const BlockerConfig& config) {
  return full_ranking(left, right, config).top(config.k);
}

std::optional<BruteChoice> brute_grid_search(const Table& left, const Table& right, const GroundTruth& gold,
                                             double recall_min, const ConfigSpace& space) {
  std::optional<BruteChoice> best;
  for (auto config : space.combinations()) {
    const std::size_t index_size = config.indexed == Side::Right ? right.size() : left.size();
    auto ranking = full_ranking(left, right, config);
    for (std::size_t k = 1; k <= index_size; ++k) {
      config.k = k;
      auto candidates = ranking.top(k);
      std::size_t positives = 0;
      for (const auto& p : candidates) positives += gold.contains(p) ? 1 : 0;
      double pc = static_cast<double>(positives) / static_cast<double>(gold.size());
      if (pc < recall_min) continue;
      BruteChoice c{config, candidates.size(), positives, pc,
                    static_cast<double>(positives) / static_cast<double>(candidates.size())};
      if (!best || c.candidates < best->candidates || (c.candidates == best->candidates && c.pq > best->pq)) best = c;
      break;
    }
  }
  return best;
}

}  // namespace erdiff::testing
