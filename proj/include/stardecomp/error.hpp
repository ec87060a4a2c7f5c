#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stardecomp {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A density point or subgraph count that cannot occur.
class FeasibilityError : public Error {
 public:
  using Error::Error;
};

/// Parameters outside the k <= d/2 regime handled here.
class RegimeError : public Error {
 public:
  using Error::Error;
};

/// Strong condition asked for a 2k | d instance (vacuous).
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class DivisibilityError : public Error {
 public:
  using Error::Error;
};

class ProfileError : public Error {
 public:
  using Error::Error;
};

class RegularityError : public Error {
 public:
  RegularityError(const std::string& what, int vertex)
      : Error(what), vertex_(vertex) {}
  /// Offending vertex, 1-based as in the file format; 0 if not applicable.
  int vertex() const noexcept { return vertex_; }

 private:
  int vertex_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Exhaustive enumeration requested above its size cap.
class SizeError : public Error {
 public:
  using Error::Error;
};

class ExhaustionError : public Error {
 public:
  ExhaustionError(const std::string& what, std::int64_t attempts)
      : Error(what), attempts_(attempts) {}
  std::int64_t attempts() const noexcept { return attempts_; }

 private:
  std::int64_t attempts_;
};

/// A numeric verdict fell inside the tolerance band around zero.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

/// No admissible x_- <= alpha_2 <= x_+ window exists.
class NoGapError : public Error {
 public:
  using Error::Error;
};

/// Internal invariant of a root or bound computation failed.
class InvariantError : public Error {
 public:
  using Error::Error;
};

}  // namespace stardecomp
