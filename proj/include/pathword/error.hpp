#ifndef PATHWORD_ERROR_HPP_
#define PATHWORD_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pathword {

enum class ErrorCode {
  kInvalidAlphabet,
  kGridTooSmall,
  kMalformedGrid,
  kOutOfBounds,
  kRepeatedCoordinate,
  kEmptyPath,
  kDimensionMismatch,
  kOutOfRange,
  kSchema,
  kCoverage,
  kBudgetExceeded,
  kDomain,
  kInvalidIdentifier,
  kDuplicateEnrollment,
  kUnknownEnrollment,
  kStorage,
  kCrypto,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a code so callers (CLI, HTTP
// layer, tests) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pathword

#endif  // PATHWORD_ERROR_HPP_
