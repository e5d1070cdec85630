#include "erdiff/errors.hpp"

namespace erdiff {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::MissingFile: return "MissingFile";
    case ErrorCode::SplitOverlap: return "SplitOverlap";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::EmptySplit: return "EmptySplit";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingEmbedding: return "MissingEmbedding";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidQ: return "InvalidQ";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::InvalidScore: return "InvalidScore";
    case ErrorCode::MissingFamily: return "MissingFamily";
    case ErrorCode::EmptyGold: return "EmptyGold";
    case ErrorCode::RecallUnreachable: return "RecallUnreachable";
    case ErrorCode::TooFewCandidates: return "TooFewCandidates";
    case ErrorCode::InvalidSample: return "InvalidSample";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace erdiff
