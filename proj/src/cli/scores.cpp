// SPDX-License-Identifier: Apache-2.0
#include <cctype>
#include <charconv>
#include <cmath>
#include <istream>
#include <string>
#include <string_view>

#include "exmax/cli.hpp"

namespace exmax::cli {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::optional<double> parse_real(std::string_view s) {
  if (!s.empty() && s.front() == '+') {
    s.remove_prefix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    return std::nullopt;
  }
  return value;
}

}  // namespace

InputError::InputError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

ScoreSequence parse_scores(std::istream& in, const std::string& source) {
  ScoreSequence seq;
  seq.source = source;
  std::string raw;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);  // also drops the '\r' of CRLF
    if (line.empty()) {
      continue;
    }
    if (line.find(',') != std::string_view::npos) {
      throw InputError(line_no, "expected a single column, found ','");
    }
    const std::optional<double> value = parse_real(line);
    if (!value) {
      if (!seen_content) {
        seen_content = true;  // CSV header
        continue;
      }
      throw InputError(line_no, "not a decimal number: '" + std::string(line) + "'");
    }
    if (!std::isfinite(*value)) {
      throw InputError(line_no, "non-finite score '" + std::string(line) + "'");
    }
    seen_content = true;
    seq.values.push_back(*value);
  }
  if (seq.values.empty()) {
    throw InputError(0, "empty input: no scores in " + source);
  }
  return seq;
}

}  // namespace exmax::cli
