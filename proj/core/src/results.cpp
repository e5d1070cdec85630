#include "erdiff/results.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "erdiff/csv.hpp"
#include "erdiff/errors.hpp"
#include "erdiff/text.hpp"

namespace erdiff {

std::string_view to_string(Family f) { return f == Family::Linear ? "linear" : "nonlinear"; }
std::string_view to_string(ResultSource s) { return s == ResultSource::Computed ? "computed" : "ingested"; }

Family parse_family(std::string_view text) {
  std::string s = text::to_lower(text);
  if (s == "linear") return Family::Linear;
  if (s == "nonlinear" || s == "non-linear") return Family::Nonlinear;
  fail(ErrorCode::MalformedRow, "unknown matcher family '" + std::string(text) + "'");
}

namespace {

bool unavailable(const std::string& cell) {
  std::string s = text::to_lower(cell);
  return s.empty() || s == "-" || s == "n/a" || s == "na";
}

}  // namespace

std::vector<MatcherResult> ingest_results(const std::filesystem::path& path) {
  auto rows = csv::read_file(path);
  if (rows.empty()) fail(ErrorCode::EmptyInput, path.string() + " is empty");
  const auto& header = rows.front();
  auto find = [&](std::string_view name) -> std::size_t {
    for (std::size_t i = 0; i < header.size(); ++i)
      if (header[i].text == name) return i;
    fail(ErrorCode::MalformedRow, path.string() + ": missing column '" + std::string(name) + "'");
  };
  std::size_t cm = find("matcher"), cd = find("dataset"), cf = find("f1"), cfam = find("family");

  std::vector<MatcherResult> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      fail(ErrorCode::MalformedRow, path.string() + ": ragged row " + std::to_string(r + 1));
    const std::string& raw = row[cf].text;
    if (unavailable(raw)) continue;
    double f1 = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), f1);
    if (ec != std::errc{} || ptr != raw.data() + raw.size())
      fail(ErrorCode::InvalidScore, path.string() + ":" + std::to_string(r + 1) + ": f1 '" + raw + "' is not a number");
    if (!(f1 >= 0.0 && f1 <= 100.0))
      fail(ErrorCode::InvalidScore, path.string() + ":" + std::to_string(r + 1) + ": f1 " + raw + " outside [0, 100]");
    out.push_back(MatcherResult{row[cm].text, row[cd].text, f1, parse_family(row[cfam].text), ResultSource::Ingested});
  }
  return out;
}

void write_results(const std::vector<MatcherResult>& results, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::MissingFile, "cannot write " + path.string());
  out << "matcher,dataset,f1,family,source\n";
  for (const auto& r : results) {
    std::ostringstream f1;
    f1 << std::fixed << std::setprecision(2) << r.f1;
    csv::write_row(out, {csv::escape(std::string_view(r.matcher)), csv::escape(std::string_view(r.dataset)), f1.str(),
                         std::string(to_string(r.family)), std::string(to_string(r.source))});
  }
}

std::vector<MatcherResult> results_for(const std::vector<MatcherResult>& all, std::string_view dataset) {
  std::vector<MatcherResult> out;
  for (const auto& r : all)
    if (r.dataset == dataset) out.push_back(r);
  return out;
}

}  // namespace erdiff
