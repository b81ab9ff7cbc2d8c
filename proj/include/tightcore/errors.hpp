#pragma once

#include <stdexcept>
#include <string>

namespace tightcore {

/// Invalid arithmetic or structural input (division by zero, ring mismatch, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A theorem's hypotheses are not met by the input (missing ring flags, non-sop ideal, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (degree cap, precision, sample count) was exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No registered data (e.g. test ideal) exists for the given ring.
class NotRegisteredError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text input could not be parsed; carries a 1-based position.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace tightcore
