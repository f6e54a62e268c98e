#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scg {

enum class ErrorCode {
  invalid_argument,
  descriptor_mismatch,
  dimension_mismatch,
  domain,
  frame_invariant,
  non_finite,
  invariant_violation,
  empty_input,
  io,
  parse,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// A Löwner map or entropy evaluation left the function's domain.
class DomainError : public Error {
 public:
  DomainError(const std::string& message, double eigenvalue);

  /// The first eigenvalue found outside the domain.
  double eigenvalue() const noexcept { return eigenvalue_; }

 private:
  double eigenvalue_;
};

}  // namespace scg
