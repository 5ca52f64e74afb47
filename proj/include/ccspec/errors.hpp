#pragma once

#include <stdexcept>
#include <string>

namespace ccspec {

// Bad user input: out-of-range values, unknown keys, non-unitary matrices, ...
// The CLI maps this to exit code 1.
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Config-file syntax problem; carries the 1-based line number.
struct ParseError : ValidationError {
  ParseError(const std::string& what, int line_no)
      : ValidationError(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  int line;
};

// A numerical routine failed to converge. The CLI maps this to exit code 2.
struct NumericalError : std::runtime_error {
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

// Adaptive quadrature exceeded its subdivision budget; carries the error estimate.
struct QuadratureError : NumericalError {
  QuadratureError(const std::string& what, double estimate)
      : NumericalError(what), error_estimate(estimate) {}
  double error_estimate;
};

// Field evaluation requested on (or too close to) a current-carrying segment.
struct SingularityError : ValidationError {
  explicit SingularityError(const std::string& what) : ValidationError(what) {}
};

// Eigenvector tracking hit a level degeneracy; message names the crossing field.
struct DegenerateLevelError : NumericalError {
  explicit DegenerateLevelError(const std::string& what) : NumericalError(what) {}
};

}  // namespace ccspec
