#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bap {

/// Broad failure class; the CLI maps it onto its exit code.
enum class ErrorKind {
  input,      ///< bad user input: shapes, parse failures, invalid constraints (exit 1)
  numerical,  ///< numerical or capacity limits, broken internal state (exit 2)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InputError : public Error {
 public:
  explicit InputError(const std::string& what) : Error(ErrorKind::input, what) {}
};

/// Zero normal on a non-trivial half-space, non-finite coefficients.
class InvalidConstraintError : public InputError {
 public:
  using InputError::InputError;
};

/// Out-of-range sequence index (e.g. lambda(0)).
class IndexError : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

class UnsupportedPlotError : public InputError {
 public:
  using InputError::InputError;
};

/// Config validation failure; carries every violated invariant.
class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<std::string> problems)
      : InputError(join(problems)), problems_(std::move(problems)) {}
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  static std::string join(const std::vector<std::string>& problems) {
    std::string out = "invalid configuration:";
    for (const auto& p : problems) out += "\n  - " + p;
    return out;
  }
  std::vector<std::string> problems_;
};

class CapacityError : public Error {
 public:
  explicit CapacityError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class StateError : public Error {
 public:
  explicit StateError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

}  // namespace bap
