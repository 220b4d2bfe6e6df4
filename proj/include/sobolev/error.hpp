#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sobolev {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed expression text. position is a byte offset into the input.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message)
      : Error("parse error at " + std::to_string(position) + ": " + message),
        position_(position),
        message_(message) {}

  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

// An expression evaluated to a non-finite value (e.g. ln(0), 1/0).
class DomainError : public Error {
 public:
  DomainError(double x, const std::string& what)
      : Error(what + " at x = " + std::to_string(x)), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

// Quadrature failed to reach tolerance or diverged.
class NumericError : public Error {
 public:
  using Error::Error;
};

// A component integral of a Sobolev inner product diverged.
class MembershipError : public NumericError {
 public:
  MembershipError(int order, const std::string& what)
      : NumericError(what), order_(order) {}
  int order() const noexcept { return order_; }

 private:
  int order_;
};

class IllConditionedError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Arguments violate an operation's precondition (zero norm, boundary values).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

}  // namespace sobolev
