#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "erdiff/results.hpp"

namespace erdiff {

/// Best non-linear minus best linear F1, in percentage points. Throws
/// MissingFamily when either family has no result.
double nlb(std::span<const MatcherResult> results);
/// 100 minus the best F1 of any matcher. Throws EmptyInput.
double lbm(std::span<const MatcherResult> results);

struct VerdictThresholds {
  double linearity = 0.8;
  double complexity = 0.4;
  double nlb = 5.0;
  double lbm = 5.0;
  /// A challenging dataset whose practical measures both reach this value is
  /// flagged as strongly challenging.
  double strong = 10.0;
};

struct VerdictInputs {
  std::string dataset;
  std::optional<double> f1_cs;
  std::optional<double> f1_js;
  std::optional<double> complexity_mean;
  std::optional<double> nlb;
  std::optional<double> lbm;
};

struct DifficultyVerdict {
  VerdictInputs inputs;
  VerdictThresholds thresholds;
  bool linearly_easy = false;
  bool complexity_easy = false;
  bool nlb_low = false;
  bool lbm_low = false;
  bool strongly_challenging = false;

  bool challenging() const { return !linearly_easy && !complexity_easy && !nlb_low && !lbm_low; }
  std::string overall() const { return challenging() ? "challenging" : "easy"; }
};

/// An absent input leaves its flag unset, so a-priori-only or
/// a-posteriori-only verdicts are possible.
DifficultyVerdict verdict(const VerdictInputs& inputs, const VerdictThresholds& thresholds = {});

}  // namespace erdiff
