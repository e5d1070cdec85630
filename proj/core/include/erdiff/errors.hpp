#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace erdiff {

enum class ErrorCode {
  DuplicateId,
  MalformedRow,
  MissingFile,
  SplitOverlap,
  DanglingReference,
  EmptySplit,
  DimensionMismatch,
  MissingEmbedding,
  EmptyInput,
  InvalidQ,
  DegenerateLabels,
  InvalidScore,
  MissingFamily,
  EmptyGold,
  RecallUnreachable,
  TooFewCandidates,
  InvalidSample,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries a stable code so callers
/// (and the CLI exit-code contract) can branch on it without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace erdiff
