#pragma once

#include <stdexcept>
#include <string>

namespace magbilap {

enum class ErrorKind {
  input,                 // malformed request or unknown identifiers
  validation,            // a graph document violates a structural invariant
  margin_violation,      // an operator was evaluated without its full stencil
  insufficient_horizon,  // a generated ball is too small for the request
  capacity,              // a generated ball or dense matrix exceeds its cap
  structural,            // a family does not have the shape an algorithm needs
};

const char* to_string(ErrorKind kind);

// Every failure the library reports carries a kind and a short stable code
// (e.g. "asymmetric_weight") so callers and tests can branch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& message)
      : std::runtime_error(message), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

}  // namespace magbilap
