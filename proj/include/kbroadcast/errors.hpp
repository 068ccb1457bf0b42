#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace kbroadcast {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or semantically invalid input (files, arguments, preconditions).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// A caller-supplied function that is required to be optimal is not.
class NotOptimalError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A configured node/time/size budget was exhausted before an exact answer.
// Carries the progress made so far so that callers can report it.
class GuardExceeded : public Error {
 public:
  GuardExceeded(const std::string& what, std::uint64_t nodes = 0, int best_so_far = -1)
      : Error(what), nodes_(nodes), best_so_far_(best_so_far) {}

  std::uint64_t nodes() const noexcept { return nodes_; }
  // Cost of the best feasible solution seen, or -1 when none was found.
  int best_so_far() const noexcept { return best_so_far_; }

 private:
  std::uint64_t nodes_;
  int best_so_far_;
};

}  // namespace kbroadcast
