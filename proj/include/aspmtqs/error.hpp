#pragma once

#include <stdexcept>
#include <string>

namespace aspmtqs {

struct SourceLocation {
  int line = 0;
  int column = 0;

  bool operator==(const SourceLocation&) const = default;
};

/// Base of every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { Lexical, Syntax, Undeclared, Arity, Sort, Declaration };

  ParseError(Kind kind, SourceLocation where, const std::string& message);

  Kind kind() const noexcept { return kind_; }
  SourceLocation where() const noexcept { return where_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Kind kind_;
  SourceLocation where_;
  std::string detail_;
};

const char* to_string(ParseError::Kind kind);

class GroundError : public Error {
 public:
  using Error::Error;
};

class CompletionError : public Error {
 public:
  using Error::Error;
};

class SpatialError : public Error {
 public:
  using Error::Error;
};

class SolverError : public Error {
 public:
  using Error::Error;
};

}  // namespace aspmtqs
