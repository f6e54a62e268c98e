#include "scg/error.hpp"

#include <sstream>

namespace scg {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::descriptor_mismatch: return "descriptor_mismatch";
    case ErrorCode::dimension_mismatch: return "dimension_mismatch";
    case ErrorCode::domain: return "domain";
    case ErrorCode::frame_invariant: return "frame_invariant";
    case ErrorCode::non_finite: return "non_finite";
    case ErrorCode::invariant_violation: return "invariant_violation";
    case ErrorCode::empty_input: return "empty_input";
    case ErrorCode::io: return "io";
    case ErrorCode::parse: return "parse";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

namespace {
std::string with_eigenvalue(const std::string& message, double eigenvalue) {
  std::ostringstream os;
  os.precision(17);
  os << message << " (offending eigenvalue " << eigenvalue << ")";
  return os.str();
}
}  // namespace

DomainError::DomainError(const std::string& message, double eigenvalue)
    : Error(ErrorCode::domain, with_eigenvalue(message, eigenvalue)), eigenvalue_(eigenvalue) {}

}  // namespace scg
