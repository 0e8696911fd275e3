#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace folk {

/// Process exit codes used by the CLI. Every library exception maps onto one.
enum class ExitCode : int {
  kSuccess = 0,
  kValidation = 1,
  kIo = 2,
  kInternal = 3,
};

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept = 0;
};

/// Malformed input text. Carries the 1-based line number when known (0 otherwise).
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }
  ExitCode exit_code() const noexcept override { return ExitCode::kValidation; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kValidation; }
};

/// Argument outside an operation's domain (e.g. ATU number 300, k > rank).
class DomainError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kValidation; }
};

class IoError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kIo; }
};

/// A broken internal invariant; indicates a bug upstream of the failing stage.
class InvariantError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInternal; }
};

class NumericalError : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kInternal; }
};

/// A failure tagged with the pipeline stage it came from; keeps the cause's exit code.
class StageError : public Error {
 public:
  StageError(std::string stage, ExitCode code, const std::string& cause)
      : Error(stage + ": " + cause), stage_(std::move(stage)), code_(code) {}
  const std::string& stage() const noexcept { return stage_; }
  ExitCode exit_code() const noexcept override { return code_; }

 private:
  std::string stage_;
  ExitCode code_;
};

/// Non-fatal finding reported while parsing (skipped motif tokens, dropped nodes, ...).
struct Diagnostic {
  std::size_t line = 0;
  std::string message;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

using Diagnostics = std::vector<Diagnostic>;

}  // namespace folk
