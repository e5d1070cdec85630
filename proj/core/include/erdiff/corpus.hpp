#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace erdiff {

/// One entity description. `values` is aligned with the owning table's
/// schema; an absent value (null in the source) is std::nullopt.
struct Record {
  std::string id;
  std::vector<std::optional<std::string>> values;

  bool operator==(const Record&) const = default;
};

/// Id-indexed record collection with a fixed attribute schema. The id column
/// is never part of the schema.
class Table {
 public:
  Table() = default;
  Table(std::string name, std::vector<std::string> schema);

  /// Throws DuplicateId or MalformedRow.
  void add(Record record);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& schema() const { return schema_; }
  std::size_t attribute_count() const { return schema_.size(); }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  const Record& operator[](std::size_t i) const { return records_[i]; }
  const std::vector<Record>& records() const { return records_; }
  auto begin() const { return records_.begin(); }
  auto end() const { return records_.end(); }

  std::optional<std::size_t> index_of(std::string_view id) const;
  const Record* find(std::string_view id) const;
  std::optional<std::size_t> attribute_index(std::string_view attribute) const;

  bool operator==(const Table& other) const {
    return schema_ == other.schema_ && records_ == other.records_;
  }

 private:
  std::string name_;
  std::vector<std::string> schema_;
  std::vector<Record> records_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct TableOptions {
  /// Column holding record ids. Default: "id" if present, else column 0.
  std::optional<std::string> id_column;
  /// Table name; defaults to the file stem.
  std::optional<std::string> name;
};

/// Reads a CSV table with header. Values are NFC-normalized; unquoted empty
/// cells become absent values.
Table load_table(const std::filesystem::path& path, const TableOptions& options = {});
void save_table(const Table& table, const std::filesystem::path& path, std::string_view id_column = "id");

struct LabeledPair {
  std::string left;
  std::string right;
  bool label = false;

  bool operator==(const LabeledPair&) const = default;
};

struct SplitCounts {
  std::size_t instances = 0;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

SplitCounts count_labels(std::span<const LabeledPair> pairs);

struct LabeledPairSet {
  std::vector<LabeledPair> train;
  std::vector<LabeledPair> validation;
  std::vector<LabeledPair> test;

  /// train, then validation, then test.
  std::vector<LabeledPair> merged() const;
};

/// A labeled benchmark: the two sources plus its train/validation/test split.
struct Dataset {
  std::string name;
  Table left;
  Table right;
  LabeledPairSet splits;
};

enum class SplitFormat { Triple, Wide };

struct SplitOptions {
  std::optional<std::string> name;
  /// Id column of tableA.csv / tableB.csv in the triple layout.
  std::optional<std::string> id_column;
};

/// Auto-detects the layout from the header of train.csv: either
/// `left_id,right_id,label` (or `ltable_id,rtable_id,label`) next to
/// tableA.csv/tableB.csv, or the wide `label,left_<attr>...,right_<attr>...`
/// layout with the records embedded in each row.
Dataset load_split(const std::filesystem::path& dir, const SplitOptions& options = {});
SplitFormat detect_split_format(const std::vector<std::string>& header);

/// Throws EmptySplit, DanglingReference or SplitOverlap.
void validate_splits(const LabeledPairSet& splits, const Table& left, const Table& right);

/// Writes tableA.csv, tableB.csv and train/valid/test.csv in the triple layout.
void save_split(const Dataset& dataset, const std::filesystem::path& dir);

using IdPair = std::pair<std::string, std::string>;

struct IdPairHash {
  std::size_t operator()(const IdPair& p) const noexcept;
};

using IdPairSet = std::unordered_set<IdPair, IdPairHash>;

class GroundTruth {
 public:
  GroundTruth() = default;
  explicit GroundTruth(IdPairSet pairs) : pairs_(std::move(pairs)) {}

  void insert(IdPair pair) { pairs_.insert(std::move(pair)); }
  bool contains(const IdPair& pair) const { return pairs_.count(pair) > 0; }
  bool contains(std::string_view left, std::string_view right) const {
    return contains(IdPair{std::string(left), std::string(right)});
  }
  std::size_t size() const { return pairs_.size(); }
  bool empty() const { return pairs_.empty(); }
  const IdPairSet& pairs() const { return pairs_; }

 private:
  IdPairSet pairs_;
};

/// `gold.csv` with columns left_id,right_id. Throws DanglingReference.
GroundTruth load_gold(const std::filesystem::path& path, const Table& left, const Table& right);
void save_gold(const GroundTruth& gold, const std::filesystem::path& path);

enum class Side { Left, Right };

/// Precomputed vectors keyed by record and scope. Keys in the file are
/// `L:<id>` / `R:<id>` for the whole record and `L:<id>:<attribute>` for a
/// single attribute.
class EmbeddingStore {
 public:
  explicit EmbeddingStore(std::size_t dimension = 0) : dimension_(dimension) {}

  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }

  /// Throws DimensionMismatch.
  void insert(std::string key, std::vector<double> vector);
  bool contains(std::string_view key) const;
  /// Throws MissingEmbedding.
  const std::vector<double>& lookup(std::string_view key) const;

  static std::string key(Side side, std::string_view record_id);
  static std::string key(Side side, std::string_view record_id, std::string_view attribute);

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

/// Whitespace-separated `key v1 ... vd` lines. An expected_dim of 0 takes the
/// dimension from the first line. Throws DimensionMismatch, MalformedRow.
EmbeddingStore load_embeddings(const std::filesystem::path& path, std::size_t expected_dim = 0);

/// positives / total. Throws EmptyInput when total is zero.
double imbalance_ratio(std::size_t positives, std::size_t total);
double imbalance_ratio(const LabeledPairSet& splits);
double imbalance_ratio(std::span<const IdPair> candidates, const GroundTruth& gold);

}  // namespace erdiff
