// errors.hpp — exception types shared across the library.
#pragma once

#include <stdexcept>
#include <string>

namespace qorbit {

// Operands belong to different algebras / variable spaces, or sizes disagree.
struct DimensionMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input text does not conform to a grammar or file schema.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what), pos(0) {}
  std::size_t pos;
};

// A symbol or operator falls outside the class an operation supports
// (p-degree > 1, non-constant vector field, shift involving p-variables, ...).
struct UnsupportedError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A stated precondition does not hold (e.g. base point not on the orbit).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace qorbit
