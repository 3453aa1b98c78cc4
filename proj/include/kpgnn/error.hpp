#ifndef KPGNN_ERROR_HPP
#define KPGNN_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace kpgnn {

enum class ErrorCode {
  kOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kInvalidArgument,
  kMalformedLine,
  kTooLarge,
  kInvalidNode,
  kInvalidConfiguration,
  kInvalidDegree,
  kRetryExhausted,
  kInvalidSkip,
  kUnknownName,
  kOverflow,
  kIo,
  kSuiteFailure,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOutOfRange: return "OUT_OF_RANGE";
    case ErrorCode::kSelfLoop: return "SELF_LOOP";
    case ErrorCode::kDuplicateEdge: return "DUPLICATE_EDGE";
    case ErrorCode::kInvalidArgument: return "INVALID_ARGUMENT";
    case ErrorCode::kMalformedLine: return "MALFORMED_LINE";
    case ErrorCode::kTooLarge: return "TOO_LARGE";
    case ErrorCode::kInvalidNode: return "INVALID_NODE";
    case ErrorCode::kInvalidConfiguration: return "INVALID_CONFIGURATION";
    case ErrorCode::kInvalidDegree: return "INVALID_DEGREE";
    case ErrorCode::kRetryExhausted: return "RETRY_EXHAUSTED";
    case ErrorCode::kInvalidSkip: return "INVALID_SKIP";
    case ErrorCode::kUnknownName: return "UNKNOWN_NAME";
    case ErrorCode::kOverflow: return "OVERFLOW";
    case ErrorCode::kIo: return "IO_ERROR";
    case ErrorCode::kSuiteFailure: return "SUITE_FAILURE";
  }
  return "UNKNOWN";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI's machine-readable report) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace kpgnn

#endif  // KPGNN_ERROR_HPP
