#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zdl {

enum class ErrorCode {
  invalid_bound,
  out_of_range,
  domain,
  pole,
  exceptional_point,
  insufficient_data,
  not_a_zero,
  refinement_stalled,
  invalid_argument,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_bound: return "invalid_bound";
    case ErrorCode::out_of_range: return "out_of_range";
    case ErrorCode::domain: return "domain_error";
    case ErrorCode::pole: return "pole";
    case ErrorCode::exceptional_point: return "exceptional_point";
    case ErrorCode::insufficient_data: return "insufficient_data";
    case ErrorCode::not_a_zero: return "not_a_zero";
    case ErrorCode::refinement_stalled: return "refinement_stalled";
    case ErrorCode::invalid_argument: return "invalid_argument";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace zdl
