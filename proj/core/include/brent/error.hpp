#pragma once

#include <stdexcept>
#include <string>

namespace brent {

/// Malformed text input. line() is 1-based, or 0 when no line applies.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// A model handed to decode() does not satisfy the formula it claims to solve.
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace brent
