#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace specrad {

/// Broad failure classes. The CLI maps these onto its exit codes.
enum class ErrorKind {
  invalid_input,      // malformed or non-finite matrix data
  invalid_argument,   // bad configuration value (tolerance, budget, ...)
  parse,              // file could not be parsed
  numerical_failure,  // a solver did not converge or produced non-finite output
  range,              // result would overflow double precision
  not_psd,            // matrix expected positive semidefinite is not
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class InvalidInput : public Error {
 public:
  explicit InvalidInput(const std::string& what)
      : Error(ErrorKind::invalid_input, what) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what)
      : Error(ErrorKind::invalid_argument, what) {}
};

class RangeError : public Error {
 public:
  explicit RangeError(const std::string& what) : Error(ErrorKind::range, what) {}
};

class NotPsdError : public Error {
 public:
  explicit NotPsdError(const std::string& what)
      : Error(ErrorKind::not_psd, what) {}
};

/// Carries a hash of the offending matrix so failures can be reproduced.
class NumericalFailure : public Error {
 public:
  NumericalFailure(const std::string& what, std::uint64_t matrix_hash);

  std::uint64_t matrix_hash() const noexcept { return hash_; }

 private:
  std::uint64_t hash_;
};

/// Parse failure with a 1-based line and field position (0 when unknown).
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t field);

  std::size_t line() const noexcept { return line_; }
  std::size_t field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::size_t field_;
};

}  // namespace specrad
