#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace homlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidVertex : public Error {
 public:
  using Error::Error;
};

class SignatureMismatch : public Error {
 public:
  using Error::Error;
};

/// A hard size precondition was violated. `limit()` is the documented bound.
class SizeLimit : public Error {
 public:
  SizeLimit(const std::string& what, std::size_t limit)
      : Error(what + " (limit " + std::to_string(limit) + ")"), limit_(limit) {}
  std::size_t limit() const noexcept { return limit_; }

 private:
  std::size_t limit_;
};

class InvalidEmbedding : public Error {
 public:
  using Error::Error;
};

class SelfLoop : public Error {
 public:
  using Error::Error;
};

/// An extension query found no witness within the search horizon. This says
/// nothing about the infinite object; it only reports the bound.
class WitnessNotFound : public Error {
 public:
  WitnessNotFound(const std::string& what, std::uint64_t bound)
      : Error(what + " (bound " + std::to_string(bound) + ")"), bound_(bound) {}
  std::uint64_t bound() const noexcept { return bound_; }

 private:
  std::uint64_t bound_;
};

class NotACRelation : public Error {
 public:
  using Error::Error;
};

class DomainMismatch : public Error {
 public:
  using Error::Error;
};

class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

/// Malformed textual input. Line and column are 1-based; 0 means unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace homlab
