#pragma once

#include <stdexcept>
#include <string>

#include "cpd4/types.hpp"

namespace cpd4 {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Evaluation outside a function/curve/surface domain.
struct DomainError : Error {
  DomainError(const std::string& what, Real offending)
      : Error(what), offending_value(offending) {}
  Real offending_value;
};

/// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : Error {
  QuadratureError(const std::string& what, Real estimate, Real bound)
      : Error(what), best_estimate(estimate), error_bound(bound) {}
  Real best_estimate;
  Real error_bound;
};

/// Degenerate tangent data (dependent vectors, vanishing speed, EG-F^2 ~ 0).
struct RegularityError : Error {
  using Error::Error;
};

/// A frame handed to a geometric operation is not orthonormal / not tangent.
struct FrameError : Error {
  using Error::Error;
};

/// The metric is not in the orthogonal E=1, F=0 chart an operation requires.
struct ChartError : Error {
  using Error::Error;
};

/// The fixed direction is (numerically) tangent or normal to the surface.
struct DegenerateDirectionError : Error {
  enum class Kind { ThetaNearZero, ThetaNearHalfPi };
  DegenerateDirectionError(Kind k, Real theta_value)
      : Error(k == Kind::ThetaNearZero
                  ? "degenerate direction: theta ~ 0 (k tangent to surface)"
                  : "degenerate direction: theta ~ pi/2 (k normal to surface)"),
        kind(k),
        theta(theta_value) {}
  Kind kind;
  Real theta;
};

/// A generator recipe violates one of its invariants.
struct RecipeError : Error {
  using Error::Error;
};

/// Bad run configuration; `path` names the offending field.
struct ConfigError : Error {
  ConfigError(const std::string& what, std::string field_path)
      : Error(what + " (at " + field_path + ")"), path(std::move(field_path)) {}
  std::string path;
};

/// File-format / IO problems.
struct IoError : Error {
  using Error::Error;
};

}  // namespace cpd4
