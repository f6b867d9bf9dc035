#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace causal {

// Base for every error the library raises. The CLI maps the concrete
// subclasses onto exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input record. line_number is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line_number)
      : Error(line_number == 0 ? what
                               : "line " + std::to_string(line_number) + ": " + what),
        line_number_(line_number) {}

  std::size_t line_number() const noexcept { return line_number_; }

 private:
  std::size_t line_number_;
};

// Well-formed input that violates a value constraint (negative timestamp,
// unknown label in strict mode, bad parameters).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A link arrived with a timestamp earlier than its predecessor.
class OrderError : public Error {
 public:
  OrderError(std::size_t index, std::int64_t timestamp, std::int64_t previous)
      : Error("link " + std::to_string(index) + " has timestamp " +
              std::to_string(timestamp) + " earlier than preceding timestamp " +
              std::to_string(previous)),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

// An enumeration cap or time budget was exceeded; no partial result exists.
class RefusalError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public RefusalError {
 public:
  using RefusalError::RefusalError;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_estimate)
      : Error(what), last_estimate_(last_estimate) {}

  double last_estimate() const noexcept { return last_estimate_; }

 private:
  double last_estimate_;
};

}  // namespace causal
