#pragma once

#include <stdexcept>
#include <string>

namespace dga {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input. `line` is 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what)
      : Error(format(source, line, what)), source_(std::move(source)), line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  static std::string format(const std::string& source, std::size_t line, const std::string& what) {
    std::string out = source.empty() ? std::string("<input>") : source;
    if (line != 0) out += ":" + std::to_string(line);
    return out + ": " + what;
  }

  std::string source_;
  std::size_t line_;
};

/// A value outside the domain of a mapping (labels, alphabets, valuations).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An operation was applied to an automaton of the wrong class
/// (e.g. emptiness on an alternating automaton).
class ClassError : public Error {
 public:
  using Error::Error;
};

}  // namespace dga
