#pragma once

#include <Eigen/Dense>

namespace cpd4 {

using Real = double;
using Vector2 = Eigen::Vector2d;
using Vector3 = Eigen::Vector3d;
using Vector4 = Eigen::Vector4d;
using Matrix2 = Eigen::Matrix2d;

/// Closed real interval [lo, hi].
struct Interval {
  Real lo = 0.0;
  Real hi = 0.0;

  Real length() const { return hi - lo; }
  Real midpoint() const { return 0.5 * (lo + hi); }
  bool contains(Real x, Real pad = 0.0) const {
    return x >= lo - pad && x <= hi + pad;
  }
  /// Shrink by `amount` on both ends.
  Interval inset(Real amount) const { return {lo + amount, hi - amount}; }
};

inline constexpr const char* kToolName = "cpd4";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace cpd4
