#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dopb {

enum class ErrorCode {
  invalid_input,
  division_by_zero,
  unsupported,
  needs_exponent_bound,
  needs_more_initial_terms,
  inconsistency,
  parse_error,
};

inline std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_input: return "invalid-input";
    case ErrorCode::division_by_zero: return "division-by-zero";
    case ErrorCode::unsupported: return "unsupported";
    case ErrorCode::needs_exponent_bound: return "needs-exponent-bound";
    case ErrorCode::needs_more_initial_terms: return "needs-more-initial-terms";
    case ErrorCode::inconsistency: return "inconsistency";
    case ErrorCode::parse_error: return "parse-error";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dopb
