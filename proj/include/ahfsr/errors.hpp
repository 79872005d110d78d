#pragma once

#include <stdexcept>
#include <string>

namespace ahfsr {

/// A configuration or argument value outside its valid range.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operands whose dimensions do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The normal-equations matrix could not be factorized.
class SingularSystem : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A non-finite value appeared during an iterative solve.
class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(const std::string& what, int iteration, long column = -1)
      : std::runtime_error(what), iteration_(iteration), column_(column) {}

  int iteration() const noexcept { return iteration_; }
  /// Column of the batch that diverged, or -1 for a single solve.
  long column() const noexcept { return column_; }

 private:
  int iteration_;
  long column_;
};

}  // namespace ahfsr
