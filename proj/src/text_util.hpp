#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "dga/error.hpp"

namespace dga::detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

/// Splits `text` into non-empty lines of whitespace-separated tokens;
/// `#` starts a comment.
inline std::vector<Line> tokenize_lines(std::string_view text) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    Line l{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      std::size_t j = i;
      while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
      if (j > i) l.tokens.emplace_back(line.substr(i, j - i));
      i = j;
    }
    if (!l.tokens.empty()) out.push_back(std::move(l));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::size_t parse_count(const std::string& tok, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw ParseError(source, line, "expected a nonnegative integer, got '" + tok + "'");
  }
}

inline long long parse_integer(const std::string& tok, const std::string& source, std::size_t line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace dga::detail
