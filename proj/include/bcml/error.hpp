#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bcml {

enum class ErrorCode {
  invalid_argument,
  invalid_parameter,
  zero_divisor,
  domain,
  pole,
  out_of_region,
  unsupported_by_oracle,
  divergent_integral,
  stencil,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// that callers (the CLI in particular) can map it onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bcml
