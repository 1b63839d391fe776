#include "specrad/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "specrad/error.hpp"

namespace specrad {

namespace {

using nlohmann::json;

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

ComplexMatrix build(Eigen::Index n, const std::vector<Complex>& entries) {
  CMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = entries[static_cast<std::size_t>(i * n + j)];
  }
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!std::isfinite(entries[k].real()) || !std::isfinite(entries[k].imag())) {
      throw InvalidInput("entry " + std::to_string(k + 1) + " is not finite");
    }
  }
  return ComplexMatrix(std::move(m));
}

Eigen::Index checked_dim(long long n, std::size_t line, std::size_t field) {
  if (n < 1 || n > kMaxDim) {
    throw ParseError("dimension " + std::to_string(n) + " outside [1, " +
                         std::to_string(kMaxDim) + "]",
                     line, field);
  }
  return static_cast<Eigen::Index>(n);
}

double parse_real(std::string_view token, std::size_t line, std::size_t field) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    return token.front() == '-' ? -HUGE_VAL : HUGE_VAL;  // rejected as non-finite later
  }
  if (ec != std::errc() || ptr != last) {
    throw ParseError("expected a real number, got '" + std::string(token) + "'", line, field);
  }
  return value;
}

// Whitespace-separated fields; '#' starts a comment.
std::vector<std::string_view> split_fields(std::string_view line) {
  line = line.substr(0, line.find('#'));
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0 && std::signbit(x)) return "-0.0";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

ComplexMatrix parse_matrix(std::string_view text) {
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_matrix_json(text) : parse_matrix_text(text);
  }
  throw ParseError("empty matrix file", 1, 0);
}

ComplexMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(),
                     line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), 0);
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.contains("entries")) {
    throw ParseError("matrix JSON needs \"dim\" and \"entries\"", 1, 0);
  }
  if (!doc["dim"].is_number_integer()) throw ParseError("\"dim\" must be an integer", 1, 0);
  const Eigen::Index n = checked_dim(doc["dim"].get<long long>(), 1, 0);
  const json& entries = doc["entries"];
  if (!entries.is_array()) throw ParseError("\"entries\" must be an array", 1, 0);
  const auto expected = static_cast<std::size_t>(n * n);
  if (entries.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " entries for dim " +
                         std::to_string(n) + ", got " + std::to_string(entries.size()),
                     1, entries.size() + 1);
  }
  std::vector<Complex> values;
  values.reserve(expected);
  for (std::size_t k = 0; k < expected; ++k) {
    const json& e = entries[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
      throw ParseError("entry must be a [re, im] pair of numbers", 1, k + 1);
    }
    values.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return build(n, values);
}

ComplexMatrix parse_matrix_text(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    const std::size_t stop = end == std::string_view::npos ? text.size() : end;
    lines.push_back(text.substr(pos, stop - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }

  std::size_t idx = 0;
  auto next_content_line = [&]() -> std::ptrdiff_t {
    while (idx < lines.size() && split_fields(lines[idx]).empty()) ++idx;
    return idx < lines.size() ? static_cast<std::ptrdiff_t>(idx) : -1;
  };

  if (next_content_line() < 0) throw ParseError("empty matrix file", 1, 0);
  const auto header = split_fields(lines[idx]);
  if (header.size() != 1) throw ParseError("first line must hold only the dimension", idx + 1, 2);
  long long n_raw = 0;
  const auto [ptr, ec] =
      std::from_chars(header[0].data(), header[0].data() + header[0].size(), n_raw);
  if (ec != std::errc() || ptr != header[0].data() + header[0].size()) {
    throw ParseError("dimension must be an integer", idx + 1, 1);
  }
  const Eigen::Index n = checked_dim(n_raw, idx + 1, 1);
  ++idx;

  const auto expected = static_cast<std::size_t>(n * n);
  std::vector<Complex> values;
  values.reserve(expected);
  while (values.size() < expected) {
    if (next_content_line() < 0) {
      throw ParseError("expected " + std::to_string(expected) + " entries, found " +
                           std::to_string(values.size()),
                       lines.size(), 0);
    }
    const auto fields = split_fields(lines[idx]);
    if (fields.size() != 2) {
      throw ParseError("expected 're im', got " + std::to_string(fields.size()) + " fields",
                       idx + 1, fields.size() < 2 ? fields.size() + 1 : 3);
    }
    values.emplace_back(parse_real(fields[0], idx + 1, 1), parse_real(fields[1], idx + 1, 2));
    ++idx;
  }
  if (next_content_line() >= 0) {
    throw ParseError("more than " + std::to_string(expected) + " entries for dim " +
                         std::to_string(n),
                     idx + 1, 1);
  }
  return build(n, values);
}

std::string format_matrix_json(const ComplexMatrix& t) {
  std::ostringstream os;
  const Eigen::Index n = t.dim();
  os << "{\n  \"dim\": " << n << ",\n  \"entries\": [\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      os << "    [" << format_double(t(i, j).real()) << ", " << format_double(t(i, j).imag())
         << "]" << (i == n - 1 && j == n - 1 ? "\n" : ",\n");
    }
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string format_matrix_text(const ComplexMatrix& t) {
  std::ostringstream os;
  const Eigen::Index n = t.dim();
  os << n << "\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      os << format_double(t(i, j).real()) << " " << format_double(t(i, j).imag()) << "\n";
    }
  }
  return os.str();
}

ComplexMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open matrix file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_matrix(buf.str());
}

void write_matrix(const std::filesystem::path& path, const ComplexMatrix& t) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write matrix file " + path.string());
  out << (path.extension() == ".txt" ? format_matrix_text(t) : format_matrix_json(t));
  if (!out) throw InvalidInput("failed writing matrix file " + path.string());
}

}  // namespace specrad
