#ifndef PECOK_ERRORS_HPP
#define PECOK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace pecok {

/// Malformed or unreadable input data (CLI exit code 2).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Arguments outside an operation's domain (CLI exit code 3).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Eigensolver or linear-system failure (CLI exit code 4).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pecok

#endif  // PECOK_ERRORS_HPP
