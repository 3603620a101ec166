#pragma once

#include <functional>

#include "cpd4/types.hpp"

namespace cpd4 {

// A smooth curve in R^4 with optional analytic derivatives.  When d1/d2 are
// absent, derivatives fall back to componentwise central differences.
struct Curve4 {
  std::function<Vector4(Real)> position;
  std::function<Vector4(Real)> d1;  // may be empty
  std::function<Vector4(Real)> d2;  // may be empty
  Interval domain{0.0, 1.0};

  Vector4 eval(Real u) const;
  Vector4 deriv(Real u) const;
  Vector4 second(Real u) const;
  Real speed(Real u) const;  // |c'(u)|
};

// Reparametrize a regular curve by arc length over `range`.  The result has
// domain [0, L] (L = total length), starts at c(range.lo), traverses the same
// image, and has unit speed up to `tol`.  Throws RegularityError if the speed
// drops below threshold at any sample point.
Curve4 arc_length_reparametrize(const Curve4& c, const Interval& range,
                                Real tol);

}  // namespace cpd4
