#include "erdiff/aggregate.hpp"

#include <algorithm>
#include <limits>

#include "erdiff/errors.hpp"

namespace erdiff {

double nlb(std::span<const MatcherResult> results) {
  double lin = -std::numeric_limits<double>::infinity();
  double non = lin;
  for (const auto& r : results) {
    double& best = r.family == Family::Linear ? lin : non;
    best = std::max(best, r.f1);
  }
  if (lin == -std::numeric_limits<double>::infinity())
    fail(ErrorCode::MissingFamily, "no linear matcher result; the non-linear boost is undefined");
  if (non == -std::numeric_limits<double>::infinity())
    fail(ErrorCode::MissingFamily, "no non-linear matcher result; the non-linear boost is undefined");
  return non - lin;
}

double lbm(std::span<const MatcherResult> results) {
  if (results.empty()) fail(ErrorCode::EmptyInput, "no matcher result; the learning-based margin is undefined");
  double best = 0;
  for (const auto& r : results) best = std::max(best, r.f1);
  return 100.0 - best;
}

DifficultyVerdict verdict(const VerdictInputs& in, const VerdictThresholds& th) {
  DifficultyVerdict v;
  v.inputs = in;
  v.thresholds = th;
  if (in.f1_cs || in.f1_js) {
    double best = std::max(in.f1_cs.value_or(0.0), in.f1_js.value_or(0.0));
    v.linearly_easy = best > th.linearity;
  }
  if (in.complexity_mean) v.complexity_easy = *in.complexity_mean < th.complexity;
  if (in.nlb) v.nlb_low = *in.nlb < th.nlb;
  if (in.lbm) v.lbm_low = *in.lbm < th.lbm;
  v.strongly_challenging = v.challenging() && in.nlb && in.lbm && *in.nlb >= th.strong && *in.lbm >= th.strong;
  return v;
}

}  // namespace erdiff
