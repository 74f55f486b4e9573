#pragma once

#include <stdexcept>
#include <string>

namespace taxo {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the file and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

// A quantity that is not defined for the given input (e.g. generality of a
// word with no associated contexts, relative precision against P = 0).
class UndefinedValue : public Error {
 public:
  using Error::Error;
};

}  // namespace taxo
