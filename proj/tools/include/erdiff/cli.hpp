#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "erdiff/aggregate.hpp"

namespace erdiff::cli {

enum ExitCode : int {
  kOk = 0,
  /// Finished, but something was skipped or reported a warning.
  kPartial = 1,
  kInputError = 2,
};

struct ProfileOptions {
  std::vector<std::filesystem::path> datasets;
  /// Display names; defaults to the directory names.
  std::vector<std::string> names;
  /// "cs-js" or "schema-based".
  std::string scheme = "cs-js";
  std::uint32_t seed = 42;
  double epsilon = 0.15;
  std::size_t max_samples = 20000;
  bool strip_punctuation = false;
  bool svg = false;
  VerdictThresholds thresholds;
  std::filesystem::path out = "erdiff-profile";
};

struct EsdeOptions {
  std::vector<std::filesystem::path> datasets;
  std::vector<std::string> names;
  /// Scheme names such as SA or SBQ; empty selects all eight.
  std::vector<std::string> schemes;
  /// One store for every dataset, or one per dataset in the same order.
  std::vector<std::filesystem::path> embeddings;
  bool baselines = false;
  bool strip_punctuation = false;
  std::uint32_t seed = 42;
  std::filesystem::path out = "results.csv";
};

struct VerdictOptions {
  /// profile.json files, or directories searched for them.
  std::vector<std::filesystem::path> profiles;
  std::vector<std::filesystem::path> results;
  VerdictThresholds thresholds;
  std::filesystem::path out = "erdiff-verdict";
};

struct GenerateOptions {
  std::filesystem::path left;
  std::filesystem::path right;
  std::filesystem::path gold;
  std::optional<std::string> id_column;
  double recall_min = 0.9;
  std::uint32_t seed = 42;
  /// Attribute names; "all" concatenates every attribute. Empty: every
  /// shared attribute plus "all".
  std::vector<std::string> attributes;
  /// "both", "on" or "off".
  std::string clean = "both";
  /// "both", "left" or "right".
  std::string indexed = "both";
  /// "tfidf" or "embedding".
  std::string blocker = "tfidf";
  std::optional<std::filesystem::path> embeddings;
  bool profile = false;
  std::string name = "generated";
  std::filesystem::path out = "erdiff-bundle";
};

struct ReportOptions {
  /// Verdict JSON files, or directories searched for `*.verdict.json`.
  std::vector<std::filesystem::path> inputs;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> svg_dir;
};

int cmd_profile(const ProfileOptions& options, std::ostream& out, std::ostream& err);
int cmd_esde(const EsdeOptions& options, std::ostream& out, std::ostream& err);
int cmd_verdict(const VerdictOptions& options, std::ostream& out, std::ostream& err);
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err);

/// Parses argv (including an optional --config file whose keys are
/// overridden by flags) and dispatches to a subcommand.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace erdiff::cli
