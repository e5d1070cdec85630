#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace erdiff {

enum class Family { Linear, Nonlinear };
enum class ResultSource { Computed, Ingested };

std::string_view to_string(Family f);
std::string_view to_string(ResultSource s);
/// "linear" / "nonlinear" (also "non-linear"), case-insensitive. Throws MalformedRow.
Family parse_family(std::string_view text);

/// Test F1 of one matcher on one dataset, in percentage points (0..100).
struct MatcherResult {
  std::string matcher;
  std::string dataset;
  double f1 = 0;
  Family family = Family::Linear;
  ResultSource source = ResultSource::Computed;
};

/// Reads `matcher,dataset,f1,family`. Cells holding "-", "N/A" or nothing
/// (unavailable scores) are skipped. Throws InvalidScore outside [0, 100].
std::vector<MatcherResult> ingest_results(const std::filesystem::path& path);
void write_results(const std::vector<MatcherResult>& results, const std::filesystem::path& path);

/// Results whose dataset equals `dataset`.
std::vector<MatcherResult> results_for(const std::vector<MatcherResult>& all, std::string_view dataset);

}  // namespace erdiff
