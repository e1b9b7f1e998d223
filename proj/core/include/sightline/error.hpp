#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sightline {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configuration or input that violates a documented bound. Carries every
/// violated bound, not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Malformed file content (JSON, OBJ, ...), with location context in the message.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace sightline
