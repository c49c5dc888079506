#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nhtwist {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Operands live in different coefficient geometries (or C/S used in flat).
class GeometryError : public Error {
public:
  using Error::Error;
};

// tau -> infinity leaves a term with a positive power of tau.
class DivergentLimitError : public Error {
public:
  using Error::Error;
};

// Dimension / geometry mismatch between functions and operators.
class StructureError : public Error {
public:
  using Error::Error;
};

class NonAbelianCarrierError : public Error {
public:
  using Error::Error;
};

class IndexError : public Error {
public:
  using Error::Error;
};

// Star-product series did not terminate within the configured order.
class TruncationError : public Error {
public:
  using Error::Error;
};

class InhomogeneousError : public Error {
public:
  using Error::Error;
};

class VerificationError : public Error {
public:
  using Error::Error;
};

/// Parse failure with a 1-based source position.
class SyntaxError : public Error {
public:
  SyntaxError(const std::string& msg, std::size_t line, std::size_t column)
      : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
        line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

/// An atom that is well-formed but not allowed in the requested context
/// (e.g. a derivative inside a coefficient).
class ContextError : public SyntaxError {
public:
  using SyntaxError::SyntaxError;
};

} // namespace nhtwist
