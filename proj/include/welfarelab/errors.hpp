#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace welfarelab {

enum class ErrorCode {
  kNegativeMass,
  kSumNotOne,
  kDimensionMismatch,
  kIndexOutOfRange,
  kMenuMismatch,
  kNonAtomicAgent,
  kMissingMenu,
  kDomainError,
  kBracketError,
  kMultiPriceChange,
  kConfigError,
  kSchemaError,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// Errors caused by malformed user input (files, flags) as opposed to a
// computation leaving its domain. The CLI maps the two groups to different
// exit codes.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace welfarelab
