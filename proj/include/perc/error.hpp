#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace perc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An object violates a type invariant (bad index, duplicate, self-loop, ...).
class InvalidInstance : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// An exact oracle refused an instance above its hard size cap.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

/// A decoder could not map a solution back to the original instance.
class DecodeError : public Error {
 public:
  using Error::Error;
};

}  // namespace perc
