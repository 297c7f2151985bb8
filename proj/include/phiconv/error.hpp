#pragma once

#include <stdexcept>
#include <string>

namespace phiconv {

enum class ErrorCode {
  invalid_argument = 1,
  unsupported_configuration = 2,
  parse_error = 3,
  domain_error = 4,
};

/// Every failure raised by the library carries one of the codes above so the
/// C API can translate it without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorCode::invalid_argument, what);
}

[[noreturn]] inline void throw_unsupported(const std::string& what) {
  throw Error(ErrorCode::unsupported_configuration, what);
}

}  // namespace phiconv
