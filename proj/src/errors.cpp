#include "welfarelab/errors.hpp"

namespace welfarelab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNegativeMass: return "NegativeMass";
    case ErrorCode::kSumNotOne: return "SumNotOne";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::kMenuMismatch: return "MenuMismatch";
    case ErrorCode::kNonAtomicAgent: return "NonAtomicAgent";
    case ErrorCode::kMissingMenu: return "MissingMenu";
    case ErrorCode::kDomainError: return "DomainError";
    case ErrorCode::kBracketError: return "BracketError";
    case ErrorCode::kMultiPriceChange: return "MultiPriceChange";
    case ErrorCode::kConfigError: return "ConfigError";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kSchemaError:
    case ErrorCode::kConfigError:
    case ErrorCode::kMissingMenu:
    case ErrorCode::kInvalidArgument:
      return true;
    default:
      return false;
  }
}

}  // namespace welfarelab
