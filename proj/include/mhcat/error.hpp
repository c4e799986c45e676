#ifndef MHCAT_ERROR_HPP
#define MHCAT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace mhcat {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Kernels or spaces that do not typecheck against each other.
class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

// A value outside the domain of a partial operation (division by zero, ∞ - ∞,
// a probability above one, an unknown label, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotAbsolutelyContinuous : public Error {
 public:
  using Error::Error;
};

// μ has an infinite atom carrying finite positive π-mass.
class NoExactDerivative : public Error {
 public:
  using Error::Error;
};

class NotCancellative : public Error {
 public:
  using Error::Error;
};

// Text that does not follow the model grammar; carries a 1-based position.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace mhcat

#endif  // MHCAT_ERROR_HPP
