#include "specrad/error.hpp"

#include <cstdio>

namespace specrad {

namespace {

std::string hex64(std::uint64_t v) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace

NumericalFailure::NumericalFailure(const std::string& what,
                                   std::uint64_t matrix_hash)
    : Error(ErrorKind::numerical_failure,
            what + " (matrix hash " + hex64(matrix_hash) + ")"),
      hash_(matrix_hash) {}

ParseError::ParseError(const std::string& what, std::size_t line,
                       std::size_t field)
    : Error(ErrorKind::parse,
            what + " at line " + std::to_string(line) + ", field " +
                std::to_string(field)),
      line_(line),
      field_(field) {}

}  // namespace specrad
