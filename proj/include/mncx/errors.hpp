#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mncx {

// Precondition or mathematical-domain violation (bad exponent, infeasible
// witness, value outside a modulus domain, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Requested closed form does not exist for this measure kind.
class NoClosedFormError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Oracle instance exceeds the configured enumeration budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Iterative solver failed to certify a result; carries the best bracket found.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double lower, double upper)
      : std::runtime_error(what), lower_(lower), upper_(upper) {}

  double lower() const { return lower_; }
  double upper() const { return upper_; }

 private:
  double lower_;
  double upper_;
};

// Text-form syntax error; position is a 0-based byte offset into the input.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        position_(position) {}

  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

}  // namespace mncx
