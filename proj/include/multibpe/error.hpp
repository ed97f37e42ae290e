#pragma once

#include <stdexcept>
#include <string>

namespace multibpe {

// Base of every error raised by the toolkit. The CLI maps subclasses to exit
// codes (see exit_code()).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Plan, config or argument violates a documented constraint.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A size precondition was not met (e.g. dev set as large as the corpus).
class SizeError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Parallel inputs disagree on length.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

class DecodeError : public Error {
 public:
  DecodeError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class VersionError : public Error {
 public:
  using Error::Error;
};

// An internal consistency check failed; always a bug.
class InvariantError : public Error {
 public:
  using Error::Error;
};

// 2 = config/usage, 3 = I/O or malformed input data, 4 = internal invariant.
int exit_code(const Error& error);

}  // namespace multibpe
