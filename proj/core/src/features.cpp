#include "erdiff/features.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <unordered_map>

#include "erdiff/errors.hpp"
#include "erdiff/parallel.hpp"
#include "erdiff/text.hpp"

namespace erdiff {
namespace {

constexpr int kMinQ = 2;
constexpr int kMaxQ = 10;
constexpr std::size_t kQCount = kMaxQ - kMinQ + 1;

void check_q(int q) {
  if (q < kMinQ || q > kMaxQ) fail(ErrorCode::InvalidQ, "q must lie in [2, 10], got " + std::to_string(q));
}

// Whitespace tokens of every selected present value, in schema order.
std::vector<std::string> scope_tokens(const Record& record, Scope scope, const TokenizeOptions& options) {
  std::vector<std::string> tokens;
  auto add = [&](const std::optional<std::string>& v) {
    if (!v) return;
    auto t = token_sequence(*v, options);
    tokens.insert(tokens.end(), std::make_move_iterator(t.begin()), std::make_move_iterator(t.end()));
  };
  if (scope) {
    if (*scope < record.values.size()) add(record.values[*scope]);
  } else {
    for (const auto& v : record.values) add(v);
  }
  return tokens;
}

std::string join(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

// Calls emit(string_view) for every q-gram occurrence in `joined`.
template <typename Emit>
void for_each_qgram(std::string_view joined, int q, Emit&& emit) {
  auto cps = text::code_points(joined);
  if (cps.size() < static_cast<std::size_t>(q)) return;
  for (std::size_t i = 0; i + q <= cps.size(); ++i) {
    const char* begin = cps[i].data();
    const char* end = cps[i + q - 1].data() + cps[i + q - 1].size();
    emit(std::string_view(begin, static_cast<std::size_t>(end - begin)));
  }
}

}  // namespace

std::vector<std::string> token_sequence(std::string_view value, const TokenizeOptions& options) {
  std::string lowered = text::to_lower(value);
  if (options.strip_punctuation) lowered = text::strip_punctuation(lowered);
  return text::split_whitespace(lowered);
}

TokenSet make_token_set(std::vector<std::string> items) {
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

TokenSet tokenize(const Record& record, Scope scope, const TokenizeOptions& options) {
  return make_token_set(scope_tokens(record, scope, options));
}

TokenSet tokenize(std::string_view value, const TokenizeOptions& options) {
  return make_token_set(token_sequence(value, options));
}

TokenSet qgram_set(std::string_view value, int q, const TokenizeOptions& options) {
  check_q(q);
  std::string joined = join(token_sequence(value, options));
  std::vector<std::string> grams;
  for_each_qgram(joined, q, [&](std::string_view g) { grams.emplace_back(g); });
  return make_token_set(std::move(grams));
}

TokenSet qgram_set(const Record& record, Scope scope, int q, const TokenizeOptions& options) {
  check_q(q);
  std::string joined = join(scope_tokens(record, scope, options));
  std::vector<std::string> grams;
  for_each_qgram(joined, q, [&](std::string_view g) { grams.emplace_back(g); });
  return make_token_set(std::move(grams));
}

double cosine(std::size_t common, std::size_t size_a, std::size_t size_b) {
  if (size_a == 0 || size_b == 0) return 0.0;
  return static_cast<double>(common) / std::sqrt(static_cast<double>(size_a) * static_cast<double>(size_b));
}

double jaccard(std::size_t common, std::size_t size_a, std::size_t size_b) {
  std::size_t uni = size_a + size_b - common;
  if (uni == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(uni);
}

double dice(std::size_t common, std::size_t size_a, std::size_t size_b) {
  if (size_a + size_b == 0) return 0.0;
  return 2.0 * static_cast<double>(common) / static_cast<double>(size_a + size_b);
}

double cosine(const TokenSet& a, const TokenSet& b) { return cosine(intersection_size(a, b), a.size(), b.size()); }
double jaccard(const TokenSet& a, const TokenSet& b) { return jaccard(intersection_size(a, b), a.size(), b.size()); }
double dice(const TokenSet& a, const TokenSet& b) { return dice(intersection_size(a, b), a.size(), b.size()); }

EmbeddingSims embedding_sims(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    fail(ErrorCode::DimensionMismatch,
         "vectors of dimension " + std::to_string(a.size()) + " and " + std::to_string(b.size()));
  }
  EmbeddingSims s;
  double dot = 0, na = 0, nb = 0, sq = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
    double d = a[i] - b[i];
    sq += d * d;
  }
  if (na > 0 && nb > 0) s.cs = std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), 0.0, 1.0);
  s.es = 1.0 / (1.0 + std::sqrt(sq));
  if (a.empty()) {
    s.ws = 1.0;
  } else {
    std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double w = 0;
    for (std::size_t i = 0; i < sa.size(); ++i) w += std::abs(sa[i] - sb[i]);
    s.ws = 1.0 / (1.0 + w / static_cast<double>(sa.size()));
  }
  return s;
}

namespace {

struct SchemeInfo {
  SchemeTag tag;
  std::string_view name;
};

constexpr std::array<SchemeInfo, 10> kSchemes{{
    {SchemeTag::SA, "SA"},
    {SchemeTag::SB, "SB"},
    {SchemeTag::SAQ, "SAQ"},
    {SchemeTag::SBQ, "SBQ"},
    {SchemeTag::SAF, "SAF"},
    {SchemeTag::SBF, "SBF"},
    {SchemeTag::SAS, "SAS"},
    {SchemeTag::SBS, "SBS"},
    {SchemeTag::CSJS, "CSJS"},
    {SchemeTag::CSJS_SB, "CSJS-SB"},
}};

constexpr std::array<SchemeTag, 8> kEsde{SchemeTag::SA,  SchemeTag::SB,  SchemeTag::SAQ, SchemeTag::SBQ,
                                         SchemeTag::SAF, SchemeTag::SBF, SchemeTag::SAS, SchemeTag::SBS};

bool is_qgram(SchemeTag t) { return t == SchemeTag::SAQ || t == SchemeTag::SBQ; }
bool is_csjs(SchemeTag t) { return t == SchemeTag::CSJS || t == SchemeTag::CSJS_SB; }

// Features per scope.
std::size_t block_size(const FeatureScheme& s) {
  if (is_csjs(s.tag)) return 2;
  if (is_qgram(s.tag)) return 3 * kQCount + (s.qgram_include_tokens ? 3 : 0);
  return 3;
}

}  // namespace

std::string_view to_string(SchemeTag tag) {
  for (const auto& s : kSchemes)
    if (s.tag == tag) return s.name;
  return "?";
}

SchemeTag parse_scheme(std::string_view name) {
  std::string upper;
  for (char c : name) upper.push_back(static_cast<char>(c >= 'a' && c <= 'z' ? c - 'a' + 'A' : c));
  if (upper.size() > 5 && upper.compare(upper.size() - 5, 5, "-ESDE") == 0) upper.resize(upper.size() - 5);
  if (upper == "SCHEMA-BASED" || upper == "CSJS_SB") return SchemeTag::CSJS_SB;
  if (upper == "SCHEMA-AGNOSTIC") return SchemeTag::CSJS;
  for (const auto& s : kSchemes)
    if (s.name == upper) return s.tag;
  fail(ErrorCode::InvalidConfig, "unknown feature scheme '" + std::string(name) + "'");
}

bool is_embedding_scheme(SchemeTag t) {
  return t == SchemeTag::SAF || t == SchemeTag::SBF || t == SchemeTag::SAS || t == SchemeTag::SBS;
}

bool is_schema_based(SchemeTag t) {
  return t == SchemeTag::SB || t == SchemeTag::SBQ || t == SchemeTag::SBF || t == SchemeTag::SBS ||
         t == SchemeTag::CSJS_SB;
}

std::span<const SchemeTag> esde_schemes() { return kEsde; }

std::size_t dimension(const FeatureScheme& scheme, std::size_t attribute_count) {
  return block_size(scheme) * (is_schema_based(scheme.tag) ? attribute_count : 1);
}

std::vector<std::string> feature_names(const FeatureScheme& scheme, const std::vector<std::string>& schema) {
  std::vector<std::string> block;
  if (is_csjs(scheme.tag)) {
    block = {"CS", "JS"};
  } else if (is_embedding_scheme(scheme.tag)) {
    block = {"CS", "ES", "WS"};
  } else if (is_qgram(scheme.tag)) {
    for (int q = kMinQ; q <= kMaxQ; ++q)
      for (const char* m : {"CS", "DS", "JS"}) block.push_back("q" + std::to_string(q) + ":" + m);
    if (scheme.qgram_include_tokens)
      for (const char* m : {"CS", "DS", "JS"}) block.push_back(std::string("tok:") + m);
  } else {
    block = {"CS", "DS", "JS"};
  }
  if (!is_schema_based(scheme.tag)) return block;
  std::vector<std::string> names;
  for (const auto& a : schema)
    for (const auto& b : block) names.push_back(a + ":" + b);
  return names;
}

// Per-record interned sets, indexed [scope][kind] where kind 0 is tokens and
// kinds 1..9 are q-grams for q = 2..10.
struct FeatureExtractor::Cache {
  using Ids = std::vector<std::uint32_t>;
  struct Entry {
    bool ready = false;
    std::vector<std::vector<Ids>> sets;
  };
  std::unordered_map<std::string, std::uint32_t> dictionary;
  std::vector<Entry> left, right;
  std::size_t scopes = 1;
  bool tokens = false;
  bool qgrams = false;

  std::uint32_t intern(std::string_view s) {
    auto [it, inserted] = dictionary.try_emplace(std::string(s), static_cast<std::uint32_t>(dictionary.size()));
    return it->second;
  }

  Ids finish(Ids ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  void build(Entry& e, const Record& r, const TokenizeOptions& options, bool schema_based) {
    e.sets.assign(scopes, std::vector<Ids>(1 + kQCount));
    for (std::size_t s = 0; s < scopes; ++s) {
      Scope scope = schema_based ? Scope(s) : Scope();
      auto seq = scope_tokens(r, scope, options);
      if (tokens) {
        Ids ids;
        for (const auto& t : seq) ids.push_back(intern(t));
        e.sets[s][0] = finish(std::move(ids));
      }
      if (qgrams) {
        std::string joined = join(seq);
        for (int q = kMinQ; q <= kMaxQ; ++q) {
          Ids ids;
          for_each_qgram(joined, q, [&](std::string_view g) { ids.push_back(intern(g)); });
          e.sets[s][q - kMinQ + 1] = finish(std::move(ids));
        }
      }
    }
    e.ready = true;
  }
};

FeatureExtractor::FeatureExtractor(const Table& left, const Table& right, FeatureScheme scheme)
    : left_(left), right_(right), scheme_(scheme), cache_(std::make_unique<Cache>()) {
  if (is_schema_based(scheme_.tag) && left_.schema() != right_.schema()) {
    fail(ErrorCode::InvalidConfig, std::string(to_string(scheme_.tag)) +
                                       " needs both tables to share one schema; use a schema-agnostic scheme");
  }
  if (is_embedding_scheme(scheme_.tag) && !scheme_.embeddings) {
    fail(ErrorCode::MissingEmbedding, std::string(to_string(scheme_.tag)) + " requires an embedding store");
  }
  dimension_ = erdiff::dimension(scheme_, left_.attribute_count());
  cache_->scopes = is_schema_based(scheme_.tag) ? left_.attribute_count() : 1;
  cache_->tokens = !is_embedding_scheme(scheme_.tag) && (!is_qgram(scheme_.tag) || scheme_.qgram_include_tokens);
  cache_->qgrams = is_qgram(scheme_.tag);
  cache_->left.resize(left_.size());
  cache_->right.resize(right_.size());
}

FeatureExtractor::~FeatureExtractor() = default;

std::vector<std::string> FeatureExtractor::names() const { return feature_names(scheme_, left_.schema()); }

void FeatureExtractor::prepare(std::span<const LabeledPair> pairs) {
  if (is_embedding_scheme(scheme_.tag)) return;
  bool sb = is_schema_based(scheme_.tag);
  for (const auto& p : pairs) {
    auto li = left_.index_of(p.left);
    auto ri = right_.index_of(p.right);
    if (!li) fail(ErrorCode::DanglingReference, "left id '" + p.left + "' not in " + left_.name());
    if (!ri) fail(ErrorCode::DanglingReference, "right id '" + p.right + "' not in " + right_.name());
    auto& le = cache_->left[*li];
    if (!le.ready) cache_->build(le, left_[*li], scheme_.tokenize, sb);
    auto& re = cache_->right[*ri];
    if (!re.ready) cache_->build(re, right_[*ri], scheme_.tokenize, sb);
  }
}

void FeatureExtractor::fill(std::size_t li, std::size_t ri, std::span<double> out) const {
  std::size_t k = 0;
  auto put3 = [&](const Cache::Ids& a, const Cache::Ids& b) {
    std::size_t c = intersection_size(a, b);
    out[k++] = cosine(c, a.size(), b.size());
    out[k++] = dice(c, a.size(), b.size());
    out[k++] = jaccard(c, a.size(), b.size());
  };

  if (is_embedding_scheme(scheme_.tag)) {
    const auto& store = *scheme_.embeddings;
    const auto& lr = left_[li];
    const auto& rr = right_[ri];
    auto put = [&](const std::string& lk, const std::string& rk) {
      auto s = embedding_sims(store.lookup(lk), store.lookup(rk));
      out[k++] = s.cs;
      out[k++] = s.es;
      out[k++] = s.ws;
    };
    if (is_schema_based(scheme_.tag)) {
      for (const auto& a : left_.schema())
        put(EmbeddingStore::key(Side::Left, lr.id, a), EmbeddingStore::key(Side::Right, rr.id, a));
    } else {
      put(EmbeddingStore::key(Side::Left, lr.id), EmbeddingStore::key(Side::Right, rr.id));
    }
    return;
  }

  const auto& le = cache_->left[li];
  const auto& re = cache_->right[ri];
  for (std::size_t s = 0; s < cache_->scopes; ++s) {
    const auto& ls = le.sets[s];
    const auto& rs = re.sets[s];
    if (is_csjs(scheme_.tag)) {
      std::size_t c = intersection_size(ls[0], rs[0]);
      out[k++] = cosine(c, ls[0].size(), rs[0].size());
      out[k++] = jaccard(c, ls[0].size(), rs[0].size());
    } else if (is_qgram(scheme_.tag)) {
      for (std::size_t q = 1; q <= kQCount; ++q) put3(ls[q], rs[q]);
      if (scheme_.qgram_include_tokens) put3(ls[0], rs[0]);
    } else {
      put3(ls[0], rs[0]);
    }
  }
}

std::vector<double> FeatureExtractor::extract(const LabeledPair& pair) {
  prepare(std::span<const LabeledPair>(&pair, 1));
  auto li = left_.index_of(pair.left);
  auto ri = right_.index_of(pair.right);
  if (!li) fail(ErrorCode::DanglingReference, "left id '" + pair.left + "' not in " + left_.name());
  if (!ri) fail(ErrorCode::DanglingReference, "right id '" + pair.right + "' not in " + right_.name());
  std::vector<double> out(dimension_);
  fill(*li, *ri, out);
  return out;
}

FeatureMatrix FeatureExtractor::extract_all(std::span<const LabeledPair> pairs) {
  prepare(pairs);
  std::vector<std::pair<std::size_t, std::size_t>> idx(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto li = left_.index_of(pairs[i].left);
    auto ri = right_.index_of(pairs[i].right);
    if (!li) fail(ErrorCode::DanglingReference, "left id '" + pairs[i].left + "' not in " + left_.name());
    if (!ri) fail(ErrorCode::DanglingReference, "right id '" + pairs[i].right + "' not in " + right_.name());
    idx[i] = {*li, *ri};
  }
  FeatureMatrix m(pairs.size(), dimension_);
  parallel_for(pairs.size(), [&](std::size_t i) { fill(idx[i].first, idx[i].second, m.row(i)); });
  return m;
}

std::vector<double> feature_vector(const LabeledPair& pair, const FeatureScheme& scheme, const Table& left,
                                   const Table& right) {
  FeatureExtractor fx(left, right, scheme);
  return fx.extract(pair);
}

}  // namespace erdiff
