#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "erdiff/aggregate.hpp"
#include "erdiff/complexity.hpp"
#include "erdiff/linearity.hpp"

namespace erdiff::report {

/// Rows `dataset,measure,f1_max,t_best`.
std::string linearity_csv(const std::vector<std::pair<std::string, LinearityResult>>& rows);
/// Per-threshold F1 curve: `dataset,measure,threshold,f1`.
std::string linearity_curve_csv(const std::vector<std::pair<std::string, LinearityResult>>& rows);
nlohmann::json linearity_json(const LinearityResult& result);

nlohmann::json complexity_json(const ComplexityReport& report);
/// `dataset,scheme,<17 measures>,mean` with one row per report.
std::string complexity_csv(const std::vector<ComplexityReport>& reports);

nlohmann::json verdict_json(const DifficultyVerdict& verdict);
/// `dataset,f1_cs,f1_js,complexity_mean,nlb,lbm,...flags,verdict`; absent
/// inputs are empty cells.
std::string verdict_csv(const std::vector<DifficultyVerdict>& verdicts);
DifficultyVerdict verdict_from_json(const nlohmann::json& j);

/// One line of the cross-dataset Markdown table.
struct SummaryRow {
  std::string dataset;
  std::optional<double> f1_cs;
  std::optional<double> f1_js;
  std::optional<double> complexity_mean;
  std::optional<double> nlb;
  std::optional<double> lbm;
  std::optional<std::string> verdict;
};

std::string markdown_summary(const std::vector<SummaryRow>& rows);

struct Bar {
  std::string label;
  double value = 0;
};

/// Static horizontal-axis bar chart. `reference` draws a dashed line at that
/// value (e.g. a verdict threshold).
std::string svg_bar_chart(const std::string& title, const std::vector<Bar>& bars, double max_value = 1.0,
                          std::optional<double> reference = std::nullopt);

/// Writes `content` to `path`, creating parent directories. Throws
/// MissingFile when the file cannot be opened.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace erdiff::report
