#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cpd4/curve4.hpp"
#include "cpd4/types.hpp"

namespace cpd4 {

// A curve on the unit sphere of the x2x3x4-hyperplane (first component 0),
// used as the profile input of the generated families.  Circle metadata is
// populated for the catalog circles and consumed by the Case-2 generators.
struct SphereCurve {
  Curve4 curve;
  bool unit_speed = false;
  std::string label;
  std::optional<Vector4> circle_axis;  // unit vector, first component 0
  std::optional<Real> circle_radius;   // Euclidean radius r = sqrt(1 - z0^2)
  std::optional<Real> circle_height;   // z0 = <phi, axis>, constant

  Vector4 value(Real t) const { return curve.eval(t); }
  Vector4 deriv(Real t) const { return curve.deriv(t); }
  Vector4 second(Real t) const { return curve.second(t); }

  // Geodesic curvature as a curve on the unit sphere; only stored for
  // circles (z0 / r).
  std::optional<Real> geodesic_curvature() const {
    if (!circle_radius || !circle_height) return std::nullopt;
    return *circle_height / *circle_radius;
  }
};

// Unit-speed circle (0, cos t, sin t, 0); axis (0,0,0,1).
SphereCurve great_circle();

// Great circle moved by a fixed rotation of the x2x3x4-hyperplane.
SphereCurve rotated_great_circle();

// Unit-speed latitude circle at height z0 about the axis (0,0,0,1):
// (0, r cos(t/r), r sin(t/r), z0) with r = sqrt(1 - z0^2).  |z0| < 1.
SphereCurve latitude_circle(Real z0);

// The latitude circle with geodesic curvature exactly 1 (z0 = 1/sqrt 2).
SphereCurve kappa_one_circle();

// Unit-speed circle at height z0 about an arbitrary unit axis in the
// hyperplane (first component of `axis` must be ~0).
SphereCurve circle_about_axis(const Vector4& axis, Real z0);

// Spiral (0, sin b(u) cos u, sin b(u) sin u, cos b(u)), b(u) = beta0 +
// lambda*u, reparametrized to unit speed over u in [0.25, 2.9].
SphereCurve spherical_spiral(Real beta0, Real lambda);

// Catalog of ready-made profiles used by tests and built-in configs.
std::vector<SphereCurve> sample_sphere_curves();

// Check |phi| = 1 (<= tol_sphere), first component 0, and unit speed
// (<= tol_speed) on a sample; throws RecipeError on violation.
void validate_sphere_curve(const SphereCurve& phi, Real tol_sphere = 1e-8,
                           Real tol_speed = 1e-6);

// Recover the (constant) axis of a circle from its Darboux frame; throws
// RecipeError when the curve is not a circle.
Vector4 derive_circle_axis(const SphereCurve& phi);

}  // namespace cpd4
