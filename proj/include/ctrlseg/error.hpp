#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ctrlseg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ParseErrorKind { syntax, dangling_reference, duplicate_id, unknown_token };

inline const char* to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::syntax: return "syntax";
    case ParseErrorKind::dangling_reference: return "dangling-reference";
    case ParseErrorKind::duplicate_id: return "duplicate-id";
    case ParseErrorKind::unknown_token: return "unknown-token";
  }
  return "?";
}

// Raised by the transcript readers. Line and column are 1-based; 0 means
// the location is not tied to a single position (e.g. a dangling reference
// detected after the whole file was read reports the referencing line).
class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + to_string(kind) + ": " +
              message),
        kind_(kind),
        line_(line),
        column_(column),
        detail_(message) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
  std::string detail_;
};

// Precondition failures of the analysis stages (unresolved annotations in
// strict mode, ambiguous hearer, degenerate tables, ...).
class AnalysisError : public Error {
 public:
  using Error::Error;
};

}  // namespace ctrlseg
