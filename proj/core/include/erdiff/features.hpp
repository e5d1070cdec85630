#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "erdiff/corpus.hpp"

namespace erdiff {

/// Sorted, duplicate-free set of lowercase tokens (or q-grams).
using TokenSet = std::vector<std::string>;

struct TokenizeOptions {
  /// Drop Unicode punctuation before splitting. Off by default.
  bool strip_punctuation = false;
};

/// Attribute index into the table schema; nullopt selects all attributes.
using Scope = std::optional<std::size_t>;

/// Lowercased whitespace tokens of `text`, in order, duplicates kept.
std::vector<std::string> token_sequence(std::string_view text, const TokenizeOptions& options = {});

/// Distinct lowercase tokens of the selected values; absent values add nothing.
TokenSet tokenize(const Record& record, Scope scope = {}, const TokenizeOptions& options = {});
TokenSet tokenize(std::string_view text, const TokenizeOptions& options = {});

/// Distinct character q-grams (code points) of the scope text, with tokens
/// joined by single spaces. Throws InvalidQ unless 2 <= q <= 10.
TokenSet qgram_set(const Record& record, Scope scope, int q, const TokenizeOptions& options = {});
TokenSet qgram_set(std::string_view text, int q, const TokenizeOptions& options = {});

/// Sorts and removes duplicates in place.
TokenSet make_token_set(std::vector<std::string> items);

template <typename T>
std::size_t intersection_size(const std::vector<T>& a, const std::vector<T>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

double cosine(std::size_t common, std::size_t size_a, std::size_t size_b);
double jaccard(std::size_t common, std::size_t size_a, std::size_t size_b);
double dice(std::size_t common, std::size_t size_a, std::size_t size_b);

double cosine(const TokenSet& a, const TokenSet& b);
double jaccard(const TokenSet& a, const TokenSet& b);
double dice(const TokenSet& a, const TokenSet& b);

struct EmbeddingSims {
  double cs = 0;
  double es = 0;
  double ws = 0;
};

/// Vector cosine clamped to [0,1], 1/(1+L2) and 1/(1+W1) over sorted
/// components. Throws DimensionMismatch.
EmbeddingSims embedding_sims(std::span<const double> a, std::span<const double> b);

enum class SchemeTag { SA, SB, SAQ, SBQ, SAF, SBF, SAS, SBS, CSJS, CSJS_SB };

std::string_view to_string(SchemeTag tag);
/// Accepts the tag names, case-insensitive; "schema-based" maps to CSJS_SB.
/// Throws InvalidConfig.
SchemeTag parse_scheme(std::string_view name);

bool is_embedding_scheme(SchemeTag tag);
bool is_schema_based(SchemeTag tag);
/// The eight ESDE variants in their canonical order.
std::span<const SchemeTag> esde_schemes();

struct FeatureScheme {
  SchemeTag tag = SchemeTag::SA;
  /// Required by SAF/SBF/SAS/SBS.
  const EmbeddingStore* embeddings = nullptr;
  /// Appends token-level [CS, DS, JS] to each q-gram block (27 -> 30 per scope).
  bool qgram_include_tokens = false;
  TokenizeOptions tokenize;
};

/// |F| for a scheme over a table with `attribute_count` attributes.
std::size_t dimension(const FeatureScheme& scheme, std::size_t attribute_count);
/// Column names such as "CS", "title:JS", "q3:DS".
std::vector<std::string> feature_names(const FeatureScheme& scheme, const std::vector<std::string>& schema);

/// Row-major n x d matrix.
struct FeatureMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  FeatureMatrix() = default;
  FeatureMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
};

/// Computes feature vectors for pairs between two tables. Token and q-gram
/// sets are built once per record and interned to integer ids, so a record
/// that occurs in many pairs is tokenized once.
class FeatureExtractor {
 public:
  /// Both tables must share one schema for the schema-based schemes.
  FeatureExtractor(const Table& left, const Table& right, FeatureScheme scheme);
  ~FeatureExtractor();
  FeatureExtractor(const FeatureExtractor&) = delete;
  FeatureExtractor& operator=(const FeatureExtractor&) = delete;

  const FeatureScheme& scheme() const { return scheme_; }
  std::size_t dimension() const { return dimension_; }
  std::vector<std::string> names() const;

  /// Throws DanglingReference or MissingEmbedding.
  std::vector<double> extract(const LabeledPair& pair);
  FeatureMatrix extract_all(std::span<const LabeledPair> pairs);

 private:
  struct Cache;

  void prepare(std::span<const LabeledPair> pairs);
  void fill(std::size_t li, std::size_t ri, std::span<double> out) const;

  const Table& left_;
  const Table& right_;
  FeatureScheme scheme_;
  std::size_t dimension_;
  std::unique_ptr<Cache> cache_;
};

/// One-off computation; use FeatureExtractor for bulk work.
std::vector<double> feature_vector(const LabeledPair& pair, const FeatureScheme& scheme, const Table& left,
                                   const Table& right);

}  // namespace erdiff
