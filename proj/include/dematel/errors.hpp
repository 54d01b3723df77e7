#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dematel {

// Base of all domain errors. Every failure carries a human-readable message
// naming location and cause; subtypes expose the structured fields.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

class DimensionMismatchError : public Error {
 public:
  DimensionMismatchError(std::string what, std::size_t expected, std::size_t got)
      : Error(std::move(what) + ": expected dimension " + std::to_string(expected) +
              ", got " + std::to_string(got)),
        expected(expected),
        got(got) {}
  std::size_t expected;
  std::size_t got;
};

class OutOfScaleError : public Error {
 public:
  OutOfScaleError(std::size_t row, std::size_t col, long long value)
      : Error("score " + std::to_string(value) + " at cell (" + std::to_string(row) +
              ", " + std::to_string(col) + ") is outside the 0-4 influence scale"),
        row(row),
        col(col),
        value(value) {}
  OutOfScaleError(const std::string& expert, std::size_t row, std::size_t col, long long value)
      : Error("score " + std::to_string(value) + " from expert \"" + expert + "\" at cell (" +
              std::to_string(row) + ", " + std::to_string(col) +
              ") is outside the 0-4 influence scale"),
        row(row),
        col(col),
        value(value) {}
  std::size_t row;
  std::size_t col;
  long long value;
};

class NonzeroDiagonalError : public Error {
 public:
  explicit NonzeroDiagonalError(std::size_t index)
      : Error("diagonal entry at index " + std::to_string(index) +
              " must be zero (self-influence is not allowed)"),
        index(index) {}
  std::size_t index;
};

class OutOfRangeError : public Error {
 public:
  OutOfRangeError(std::size_t row, std::size_t col, double value)
      : Error("entry " + std::to_string(value) + " at cell (" + std::to_string(row) +
              ", " + std::to_string(col) + ") is outside [0, 4]"),
        row(row),
        col(col),
        value(value) {}
  std::size_t row;
  std::size_t col;
  double value;
};

class EmptyPanelError : public Error {
 public:
  EmptyPanelError() : Error("expert panel is empty") {}
};

class DegenerateMatrixError : public Error {
 public:
  DegenerateMatrixError()
      : Error("direct-relation matrix is all zeros; normalization divisor is 0") {}
};

class SingularMatrixError : public Error {
 public:
  explicit SingularMatrixError(std::size_t column)
      : Error("matrix is singular: no usable pivot in elimination column " +
              std::to_string(column)),
        column(column) {}
  std::size_t column;
};

class DivergedError : public Error {
 public:
  explicit DivergedError(std::size_t iterations)
      : Error("matrix power series did not converge after " +
              std::to_string(iterations) + " terms (spectral radius >= 1)"),
        iterations(iterations) {}
  std::size_t iterations;
};

class ConvergenceFailureError : public Error {
 public:
  explicit ConvergenceFailureError(const std::string& detail)
      : Error("total-relation computation failed to converge: " + detail) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error("parse error at line " + std::to_string(line) + ": " + reason),
        line(line),
        reason(reason) {}
  std::size_t line;
  std::string reason;
};

class DuplicateCodeError : public Error {
 public:
  explicit DuplicateCodeError(const std::string& code)
      : Error("duplicate criterion code \"" + code + "\""), code(code) {}
  std::string code;
};

class UnknownCodeError : public Error {
 public:
  UnknownCodeError(std::size_t line, const std::string& code)
      : Error("unknown criterion code \"" + code + "\" at line " + std::to_string(line)),
        line(line),
        code(code) {}
  std::size_t line;
  std::string code;
};

class MissingCellError : public Error {
 public:
  MissingCellError(std::string expert, std::string from, std::string to)
      : Error("survey for expert \"" + expert + "\" is missing cell " + from + " -> " + to),
        expert(std::move(expert)),
        from(std::move(from)),
        to(std::move(to)) {}
  std::string expert;
  std::string from;
  std::string to;
};

class DuplicateCellError : public Error {
 public:
  DuplicateCellError(std::size_t line, std::string expert, std::string from, std::string to)
      : Error("duplicate survey cell " + from + " -> " + to + " for expert \"" + expert +
              "\" at line " + std::to_string(line)),
        line(line),
        expert(std::move(expert)),
        from(std::move(from)),
        to(std::move(to)) {}
  std::size_t line;
  std::string expert;
  std::string from;
  std::string to;
};

class AllTrialsDegenerateError : public Error {
 public:
  explicit AllTrialsDegenerateError(std::size_t trials)
      : Error("all " + std::to_string(trials) + " perturbation trials were degenerate"),
        trials(trials) {}
  std::size_t trials;
};

}  // namespace dematel
