// errors.hpp
// Exception types shared by every prime_race module.
//
// The CLI maps these onto process exit codes:
//   DomainError / PreconditionError -> 2 (usage)
//   CapacityError                   -> 3
//   ParseError / IoError            -> 4
//   NonConvergenceError             -> 5

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prime_race {

// An argument lies outside the mathematical domain of an operation.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Evaluation at a pole (zeta at s = 1).
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A request exceeds the configured desk-scale caps.
class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// The caller violated an operation's precondition (e.g. sparse ledger
// passed where a dense one is required).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The operation is defined but not supported for this input.
class UnsupportedError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed file content. line() is 1-based; 0 means "whole file".
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class NonConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace prime_race
