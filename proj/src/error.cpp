#include "pathword/error.hpp"

namespace pathword {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidAlphabet: return "invalid-alphabet";
    case ErrorCode::kGridTooSmall: return "grid-too-small";
    case ErrorCode::kMalformedGrid: return "malformed-grid";
    case ErrorCode::kOutOfBounds: return "out-of-bounds";
    case ErrorCode::kRepeatedCoordinate: return "repeated-coordinate";
    case ErrorCode::kEmptyPath: return "empty-path";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kSchema: return "schema";
    case ErrorCode::kCoverage: return "coverage";
    case ErrorCode::kBudgetExceeded: return "budget-exceeded";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kInvalidIdentifier: return "invalid-identifier";
    case ErrorCode::kDuplicateEnrollment: return "duplicate-enrollment";
    case ErrorCode::kUnknownEnrollment: return "unknown-enrollment";
    case ErrorCode::kStorage: return "storage";
    case ErrorCode::kCrypto: return "crypto";
  }
  return "unknown";
}

}  // namespace pathword
