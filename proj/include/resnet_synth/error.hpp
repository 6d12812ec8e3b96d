#pragma once

#include <stdexcept>
#include <string>

namespace resnet_synth {

enum class ErrorKind {
  invalid_input,
  dimension_mismatch,
  infeasible,
  parse,
  unsupported_version,
  verification_failed,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_input: return "invalid input";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::infeasible: return "infeasible";
    case ErrorKind::parse: return "parse error";
    case ErrorKind::unsupported_version: return "unsupported version";
    case ErrorKind::verification_failed: return "verification failed";
  }
  return "error";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace resnet_synth
