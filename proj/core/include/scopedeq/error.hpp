#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scopedeq {

// Base for every error raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SignatureError : Error {
  using Error::Error;
};

// Ill-formed term, bad substitution arguments, context mismatch.
struct TermError : Error {
  using Error::Error;
};

struct ModelError : Error {
  using Error::Error;
};

struct ParseError : Error {
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

}  // namespace scopedeq
