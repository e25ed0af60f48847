#pragma once

#include <stdexcept>
#include <string>

namespace hpsg {

/// Broad failure classes; the CLI maps each onto an exit status.
enum class ErrorKind {
  kUsage = 1,      // bad flags or configuration
  kData = 2,       // malformed or inconsistent input files
  kInvariant = 3,  // contract or self-check failure
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Syntax errors in an input stream; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error(ErrorKind::kData, "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// Well-formed text that violates a tree invariant (cycles, multiple roots).
class StructuralError : public Error {
 public:
  explicit StructuralError(const std::string& what) : Error(ErrorKind::kData, what) {}
};

/// Paired treebanks disagree on sentence count or token forms.
class AlignmentError : public Error {
 public:
  explicit AlignmentError(const std::string& what) : Error(ErrorKind::kData, what) {}
};

/// A tree read from disk breaks the head annotation rules.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::kData, what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(ErrorKind::kUsage, what) {}
};

/// Caller broke a documented precondition.
class ContractError : public Error {
 public:
  explicit ContractError(const std::string& what) : Error(ErrorKind::kInvariant, what) {}
};

}  // namespace hpsg
