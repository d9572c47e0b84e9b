#pragma once

#include <stdexcept>
#include <string>

namespace fwa {

enum class ErrorCode {
  InvalidArgument,
  Parse,
  Schema,
  GradeRange,
  UnknownId,
  UniverseMismatch,
  AlphabetMismatch,
  NotHomomorphism,
  BudgetExceeded,
  Io,
};

/// Every failure raised by the library carries one of the codes above; the
/// C API maps them one-to-one onto fwa_status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

const char* to_string(ErrorCode code) noexcept;

}  // namespace fwa
