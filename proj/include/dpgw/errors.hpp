#ifndef DPGW_ERRORS_HPP
#define DPGW_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dpgw {

/// Bad user input: unparsable class strings, surfaces outside the del Pezzo
/// range, malformed queries. The CLI maps these to exit code 1.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rank mismatch between a class and the surface it is used with.
class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Malformed cache line. Carries the 1-based line number.
class ParseError : public ValidationError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Cache file written by an incompatible format version.
class VersionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that must hold on a correct build did not. Exit code 2.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace dpgw

#endif  // DPGW_ERRORS_HPP
