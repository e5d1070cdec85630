#include "erdiff/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "erdiff/csv.hpp"
#include "erdiff/errors.hpp"
#include "erdiff/text.hpp"

namespace erdiff {
namespace fs = std::filesystem;

Table::Table(std::string name, std::vector<std::string> schema)
    : name_(std::move(name)), schema_(std::move(schema)) {}

void Table::add(Record record) {
  if (record.values.size() != schema_.size()) {
    fail(ErrorCode::MalformedRow, "record '" + record.id + "' has " + std::to_string(record.values.size()) +
                                      " values, schema of '" + name_ + "' has " +
                                      std::to_string(schema_.size()));
  }
  auto [it, inserted] = index_.emplace(record.id, records_.size());
  if (!inserted) fail(ErrorCode::DuplicateId, "id '" + record.id + "' repeated in table '" + name_ + "'");
  records_.push_back(std::move(record));
}

std::optional<std::size_t> Table::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Record* Table::find(std::string_view id) const {
  auto i = index_of(id);
  return i ? &records_[*i] : nullptr;
}

std::optional<std::size_t> Table::attribute_index(std::string_view attribute) const {
  auto it = std::find(schema_.begin(), schema_.end(), attribute);
  if (it == schema_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - schema_.begin());
}

Table load_table(const fs::path& path, const TableOptions& options) {
  auto rows = csv::read_file(path);
  if (rows.empty()) fail(ErrorCode::MalformedRow, path.string() + ": missing header row");
  const auto& header = rows.front();

  std::size_t id_col = 0;
  if (options.id_column) {
    auto it = std::find_if(header.begin(), header.end(), [&](const csv::Cell& c) { return c.text == *options.id_column; });
    if (it == header.end()) fail(ErrorCode::MalformedRow, path.string() + ": no id column '" + *options.id_column + "'");
    id_col = static_cast<std::size_t>(it - header.begin());
  } else {
    auto it = std::find_if(header.begin(), header.end(), [](const csv::Cell& c) { return c.text == "id"; });
    if (it != header.end()) id_col = static_cast<std::size_t>(it - header.begin());
  }

  std::vector<std::string> schema;
  for (std::size_t c = 0; c < header.size(); ++c)
    if (c != id_col) schema.push_back(header[c].text);
  if (schema.empty()) fail(ErrorCode::MalformedRow, path.string() + ": no attributes besides the id column");

  Table table(options.name.value_or(path.stem().string()), schema);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) {
      fail(ErrorCode::MalformedRow, path.string() + ": row " + std::to_string(r + 1) + " has " +
                                        std::to_string(row.size()) + " fields, header has " +
                                        std::to_string(header.size()));
    }
    Record record;
    record.id = row[id_col].text;
    record.values.reserve(schema.size());
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c == id_col) continue;
      auto v = row[c].value();
      if (v) v = text::nfc(*v);
      record.values.push_back(std::move(v));
    }
    table.add(std::move(record));
  }
  return table;
}

void save_table(const Table& table, const fs::path& path, std::string_view id_column) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::MissingFile, "cannot write " + path.string());
  std::vector<std::string> fields{csv::escape(id_column)};
  for (const auto& a : table.schema()) fields.push_back(csv::escape(std::string_view(a)));
  csv::write_row(out, fields);
  for (const auto& r : table) {
    fields.assign(1, csv::escape(std::string_view(r.id)));
    for (const auto& v : r.values) fields.push_back(csv::escape(v));
    csv::write_row(out, fields);
  }
}

SplitCounts count_labels(std::span<const LabeledPair> pairs) {
  SplitCounts c;
  c.instances = pairs.size();
  c.positives = static_cast<std::size_t>(std::count_if(pairs.begin(), pairs.end(), [](const auto& p) { return p.label; }));
  c.negatives = c.instances - c.positives;
  return c;
}

std::vector<LabeledPair> LabeledPairSet::merged() const {
  std::vector<LabeledPair> all;
  all.reserve(train.size() + validation.size() + test.size());
  all.insert(all.end(), train.begin(), train.end());
  all.insert(all.end(), validation.begin(), validation.end());
  all.insert(all.end(), test.begin(), test.end());
  return all;
}

namespace {

const char* kSplitFiles[3] = {"train.csv", "valid.csv", "test.csv"};

bool parse_label(const std::string& raw, bool& out) {
  std::string s = text::to_lower(raw);
  if (s == "1" || s == "1.0" || s == "true") {
    out = true;
    return true;
  }
  if (s == "0" || s == "0.0" || s == "false") {
    out = false;
    return true;
  }
  return false;
}

std::optional<std::size_t> column(const csv::Row& header, std::initializer_list<std::string_view> names) {
  for (auto name : names)
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i].text == name) return i;
  return std::nullopt;
}

std::vector<std::string> header_names(const csv::Row& row) {
  std::vector<std::string> out;
  for (const auto& c : row) out.push_back(c.text);
  return out;
}

std::vector<LabeledPair> read_triples(const fs::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty()) fail(ErrorCode::EmptySplit, path.string() + " is empty");
  const auto& header = rows.front();
  auto lcol = column(header, {"left_id", "ltable_id"});
  auto rcol = column(header, {"right_id", "rtable_id"});
  auto ycol = column(header, {"label"});
  if (!lcol || !rcol || !ycol) fail(ErrorCode::MalformedRow, path.string() + ": expected left_id,right_id,label columns");
  std::vector<LabeledPair> pairs;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) fail(ErrorCode::MalformedRow, path.string() + ": ragged row " + std::to_string(r + 1));
    LabeledPair p{row[*lcol].text, row[*rcol].text, false};
    if (!parse_label(row[*ycol].text, p.label))
      fail(ErrorCode::MalformedRow, path.string() + ": bad label '" + row[*ycol].text + "'");
    pairs.push_back(std::move(p));
  }
  return pairs;
}

// Wide layout: interns the embedded records so that identical descriptions
// share an id, which keeps overlap detection meaningful.
class WideSplitReader {
 public:
  WideSplitReader() = default;

  void read(const fs::path& path, std::vector<LabeledPair>& out) {
    auto rows = csv::read_file(path);
    if (rows.empty()) fail(ErrorCode::EmptySplit, path.string() + " is empty");
    const auto& header = rows.front();
    auto ycol = column(header, {"label"});
    if (!ycol) fail(ErrorCode::MalformedRow, path.string() + ": no label column");
    auto lid = column(header, {"left_id", "ltable_id"});
    auto rid = column(header, {"right_id", "rtable_id"});

    std::vector<std::string> lattrs, rattrs;
    std::vector<std::size_t> lcols, rcols;
    for (std::size_t i = 0; i < header.size(); ++i) {
      const auto& name = header[i].text;
      if (lid && i == *lid) continue;
      if (rid && i == *rid) continue;
      if (name.rfind("left_", 0) == 0) {
        lattrs.push_back(name.substr(5));
        lcols.push_back(i);
      } else if (name.rfind("right_", 0) == 0) {
        rattrs.push_back(name.substr(6));
        rcols.push_back(i);
      }
    }
    if (lattrs.empty() || rattrs.empty()) fail(ErrorCode::MalformedRow, path.string() + ": no left_/right_ attribute columns");
    if (!schema_set_) {
      left_schema_ = lattrs;
      right_schema_ = rattrs;
      schema_set_ = true;
    } else if (left_schema_ != lattrs || right_schema_ != rattrs) {
      fail(ErrorCode::MalformedRow, path.string() + ": attribute columns differ from train.csv");
    }

    for (std::size_t r = 1; r < rows.size(); ++r) {
      const auto& row = rows[r];
      if (row.size() != header.size()) fail(ErrorCode::MalformedRow, path.string() + ": ragged row " + std::to_string(r + 1));
      LabeledPair p;
      if (!parse_label(row[*ycol].text, p.label))
        fail(ErrorCode::MalformedRow, path.string() + ": bad label '" + row[*ycol].text + "'");
      p.left = intern(left_, row, lcols, lid, 'a');
      p.right = intern(right_, row, rcols, rid, 'b');
      out.push_back(std::move(p));
    }
  }

  Table left_table() const { return build("tableA", left_schema_, left_); }
  Table right_table() const { return build("tableB", right_schema_, right_); }

 private:
  using Values = std::vector<std::optional<std::string>>;
  struct Side {
    std::map<Values, std::string> by_values;
    std::vector<Record> records;
    std::unordered_map<std::string, std::size_t> by_id;
  };

  static std::string intern(Side& side, const csv::Row& row, const std::vector<std::size_t>& cols,
                            std::optional<std::size_t> id_col, char prefix) {
    Values values;
    for (auto c : cols) {
      auto v = row[c].value();
      if (v) v = text::nfc(*v);
      values.push_back(std::move(v));
    }
    if (id_col) {
      std::string id = row[*id_col].text;
      if (!side.by_id.count(id)) {
        side.by_id.emplace(id, side.records.size());
        side.records.push_back(Record{id, std::move(values)});
      }
      return id;
    }
    auto it = side.by_values.find(values);
    if (it != side.by_values.end()) return it->second;
    std::string id = std::string(1, prefix) + std::to_string(side.records.size());
    side.by_values.emplace(values, id);
    side.records.push_back(Record{id, std::move(values)});
    return id;
  }

  static Table build(const std::string& name, const std::vector<std::string>& schema, const Side& side) {
    Table t(name, schema);
    for (const auto& r : side.records) t.add(r);
    return t;
  }

  bool schema_set_ = false;
  std::vector<std::string> left_schema_, right_schema_;
  Side left_, right_;
};

}  // namespace

SplitFormat detect_split_format(const std::vector<std::string>& header) {
  auto has = [&](std::string_view n) { return std::find(header.begin(), header.end(), n) != header.end(); };
  bool ids = (has("left_id") || has("ltable_id")) && (has("right_id") || has("rtable_id"));
  bool attrs = std::any_of(header.begin(), header.end(), [](const std::string& h) {
    return h.rfind("left_", 0) == 0 && h != "left_id";
  });
  if (ids && !attrs) return SplitFormat::Triple;
  return SplitFormat::Wide;
}

Dataset load_split(const fs::path& dir, const SplitOptions& options) {
  for (auto* f : kSplitFiles)
    if (!fs::exists(dir / f)) fail(ErrorCode::MissingFile, (dir / f).string() + " not found");

  auto header = csv::read_header(dir / "train.csv");
  if (!header) fail(ErrorCode::EmptySplit, (dir / "train.csv").string() + " is empty");

  Dataset ds;
  ds.name = options.name.value_or(fs::absolute(dir).lexically_normal().filename().string());
  if (ds.name.empty()) ds.name = fs::absolute(dir).parent_path().filename().string();

  std::vector<LabeledPair>* targets[3] = {&ds.splits.train, &ds.splits.validation, &ds.splits.test};
  if (detect_split_format(header_names(*header)) == SplitFormat::Triple) {
    TableOptions topt;
    topt.id_column = options.id_column;
    topt.name = "tableA";
    ds.left = load_table(dir / "tableA.csv", topt);
    topt.name = "tableB";
    ds.right = load_table(dir / "tableB.csv", topt);
    for (int i = 0; i < 3; ++i) *targets[i] = read_triples(dir / kSplitFiles[i]);
  } else {
    WideSplitReader reader;
    for (int i = 0; i < 3; ++i) reader.read(dir / kSplitFiles[i], *targets[i]);
    ds.left = reader.left_table();
    ds.right = reader.right_table();
  }
  validate_splits(ds.splits, ds.left, ds.right);
  return ds;
}

void validate_splits(const LabeledPairSet& splits, const Table& left, const Table& right) {
  const std::vector<LabeledPair>* parts[3] = {&splits.train, &splits.validation, &splits.test};
  const char* names[3] = {"train", "validation", "test"};
  for (int i = 0; i < 3; ++i)
    if (parts[i]->empty()) fail(ErrorCode::EmptySplit, std::string(names[i]) + " split has no pairs");

  std::unordered_map<IdPair, int, IdPairHash> owner;
  for (int i = 0; i < 3; ++i) {
    for (const auto& p : *parts[i]) {
      if (!left.find(p.left)) fail(ErrorCode::DanglingReference, "left id '" + p.left + "' in " + names[i] + " not in " + left.name());
      if (!right.find(p.right)) fail(ErrorCode::DanglingReference, "right id '" + p.right + "' in " + names[i] + " not in " + right.name());
      auto [it, inserted] = owner.emplace(IdPair{p.left, p.right}, i);
      if (!inserted && it->second != i) {
        fail(ErrorCode::SplitOverlap, "pair (" + p.left + ", " + p.right + ") appears in both " + names[it->second] +
                                          " and " + names[i]);
      }
    }
  }
}

void save_split(const Dataset& dataset, const fs::path& dir) {
  fs::create_directories(dir);
  save_table(dataset.left, dir / "tableA.csv");
  save_table(dataset.right, dir / "tableB.csv");
  const std::vector<LabeledPair>* parts[3] = {&dataset.splits.train, &dataset.splits.validation, &dataset.splits.test};
  for (int i = 0; i < 3; ++i) {
    std::ofstream out(dir / kSplitFiles[i], std::ios::binary);
    if (!out) fail(ErrorCode::MissingFile, "cannot write " + (dir / kSplitFiles[i]).string());
    out << "left_id,right_id,label\n";
    for (const auto& p : *parts[i])
      out << csv::escape(std::string_view(p.left)) << ',' << csv::escape(std::string_view(p.right)) << ','
          << (p.label ? 1 : 0) << '\n';
  }
}

std::size_t IdPairHash::operator()(const IdPair& p) const noexcept {
  std::size_t h = std::hash<std::string>{}(p.first);
  return h ^ (std::hash<std::string>{}(p.second) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

GroundTruth load_gold(const fs::path& path, const Table& left, const Table& right) {
  auto rows = csv::read_file(path);
  if (rows.empty()) fail(ErrorCode::EmptyGold, path.string() + " is empty");
  const auto& header = rows.front();
  auto lcol = column(header, {"left_id", "ltable_id", "idA", "id1"});
  auto rcol = column(header, {"right_id", "rtable_id", "idB", "id2"});
  if (!lcol || !rcol) fail(ErrorCode::MalformedRow, path.string() + ": expected left_id,right_id columns");
  GroundTruth gold;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size()) fail(ErrorCode::MalformedRow, path.string() + ": ragged row " + std::to_string(r + 1));
    const auto& l = row[*lcol].text;
    const auto& rr = row[*rcol].text;
    if (!left.find(l)) fail(ErrorCode::DanglingReference, "gold left id '" + l + "' not in " + left.name());
    if (!right.find(rr)) fail(ErrorCode::DanglingReference, "gold right id '" + rr + "' not in " + right.name());
    gold.insert({l, rr});
  }
  return gold;
}

void save_gold(const GroundTruth& gold, const fs::path& path) {
  std::vector<IdPair> sorted(gold.pairs().begin(), gold.pairs().end());
  std::sort(sorted.begin(), sorted.end());
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::MissingFile, "cannot write " + path.string());
  out << "left_id,right_id\n";
  for (const auto& [l, r] : sorted)
    out << csv::escape(std::string_view(l)) << ',' << csv::escape(std::string_view(r)) << '\n';
}

void EmbeddingStore::insert(std::string key, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    fail(ErrorCode::DimensionMismatch, "vector for '" + key + "' has " + std::to_string(vector.size()) +
                                           " components, expected " + std::to_string(dimension_));
  }
  vectors_[std::move(key)] = std::move(vector);
}

bool EmbeddingStore::contains(std::string_view key) const { return vectors_.count(std::string(key)) > 0; }

const std::vector<double>& EmbeddingStore::lookup(std::string_view key) const {
  auto it = vectors_.find(std::string(key));
  if (it == vectors_.end()) fail(ErrorCode::MissingEmbedding, "no embedding for key '" + std::string(key) + "'");
  return it->second;
}

std::string EmbeddingStore::key(Side side, std::string_view record_id) {
  std::string k = side == Side::Left ? "L:" : "R:";
  k += record_id;
  return k;
}

std::string EmbeddingStore::key(Side side, std::string_view record_id, std::string_view attribute) {
  std::string k = key(side, record_id);
  k += ':';
  k += attribute;
  return k;
}

EmbeddingStore load_embeddings(const fs::path& path, std::size_t expected_dim) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::MissingFile, "cannot open " + path.string());
  EmbeddingStore store(expected_dim);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto parts = text::split_whitespace(line);
    if (parts.empty()) continue;
    std::vector<double> v;
    v.reserve(parts.size() - 1);
    for (std::size_t i = 1; i < parts.size(); ++i) {
      const auto& s = parts[i];
      double x = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
      if (ec != std::errc{} || ptr != s.data() + s.size())
        fail(ErrorCode::MalformedRow, path.string() + ":" + std::to_string(lineno) + ": bad number '" + s + "'");
      v.push_back(x);
    }
    if (expected_dim == 0) {
      expected_dim = v.size();
      store = EmbeddingStore(expected_dim);
    }
    if (v.size() != expected_dim) {
      fail(ErrorCode::DimensionMismatch, path.string() + ":" + std::to_string(lineno) + ": " + std::to_string(v.size()) +
                                             " components, expected " + std::to_string(expected_dim));
    }
    store.insert(parts[0], std::move(v));
  }
  return store;
}

double imbalance_ratio(std::size_t positives, std::size_t total) {
  if (total == 0) fail(ErrorCode::EmptyInput, "imbalance ratio of an empty pair collection");
  return static_cast<double>(positives) / static_cast<double>(total);
}

double imbalance_ratio(const LabeledPairSet& splits) {
  std::size_t pos = 0, total = 0;
  for (const auto* part : {&splits.train, &splits.validation, &splits.test}) {
    auto c = count_labels(*part);
    pos += c.positives;
    total += c.instances;
  }
  return imbalance_ratio(pos, total);
}

double imbalance_ratio(std::span<const IdPair> candidates, const GroundTruth& gold) {
  std::size_t pos = 0;
  for (const auto& c : candidates)
    if (gold.contains(c)) ++pos;
  return imbalance_ratio(pos, candidates.size());
}

}  // namespace erdiff
