#pragma once

#include <stdexcept>
#include <string>

namespace qam {

// Base class for everything this library throws.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed expression / sample / interval text.
struct ParseError : Error {
  using Error::Error;
};

// A node is incompatible with its domain, or a point lies outside it.
struct DomainError : Error {
  using Error::Error;
};

// Strict monotonicity failed on the validation grid, or a construct is
// structurally non-monotone (constant exp, mismatched piecewise branches).
struct NotMonotone : Error {
  using Error::Error;
};

// Requested derivative does not exist at the point.
struct NotDifferentiable : Error {
  using Error::Error;
};

// Inversion target lies outside the attainable range.
struct RangeError : Error {
  using Error::Error;
};

struct InvalidParameter : Error {
  using Error::Error;
};

struct ZeroDerivative : Error {
  using Error::Error;
};

// One-sided difference quotients failed to converge; the derivative most
// likely does not exist (or is infinite).
struct Unstable : Error {
  using Error::Error;
};

struct NotComparable : Error {
  using Error::Error;
};

struct NoWitnessFound : Error {
  using Error::Error;
};

// Applicable comparison criteria disagree beyond tolerance. This signals a
// numerical-tolerance problem (the criteria are mathematically equivalent),
// or a pair the sampling budget cannot resolve.
struct CriteriaConflict : Error {
  using Error::Error;
};

}  // namespace qam
