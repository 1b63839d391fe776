#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "specrad/matkernel.hpp"

namespace specrad {

// Two on-disk forms are accepted:
//
// JSON (primary):
//   {"dim": n, "entries": [[re, im], ...]}     n*n pairs, row-major
//
// Plain text (hand-written fixtures):
//   n
//   re im                                      n*n lines, row-major
//
// Readers detect the form from the first non-blank character ('{' => JSON).
// Writers print 17 significant digits so a write/read cycle is bit-exact.
// Syntax problems raise ParseError (1-based line and field; for JSON the field
// is the entry index when the problem is with one entry), non-finite values
// raise InvalidInput.

ComplexMatrix parse_matrix(std::string_view text);
ComplexMatrix parse_matrix_json(std::string_view text);
ComplexMatrix parse_matrix_text(std::string_view text);

std::string format_matrix_json(const ComplexMatrix& t);
std::string format_matrix_text(const ComplexMatrix& t);

ComplexMatrix read_matrix(const std::filesystem::path& path);
/// Text form for a ".txt" extension, JSON otherwise.
void write_matrix(const std::filesystem::path& path, const ComplexMatrix& t);

/// "%.17g", with negative zero spelled "-0.0" so JSON readers keep the sign.
std::string format_double(double x);

}  // namespace specrad
