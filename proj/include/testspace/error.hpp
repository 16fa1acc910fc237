#pragma once

#include <stdexcept>
#include <string>

namespace testspace {

// Raised when inputs violate an operation's preconditions. The CLI maps it to
// exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& message, std::string field = {})
      : std::invalid_argument(message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

// Raised when a construction that should succeed does not (retry budgets,
// internal consistency checks). The CLI maps it to exit code 3.
class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace testspace
