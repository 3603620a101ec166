#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "cpd4/function1d.hpp"
#include "cpd4/sphere_curves.hpp"
#include "cpd4/surface.hpp"
#include "cpd4/types.hpp"

namespace cpd4 {

// The four generated families: angle profile non-constant (NC) or constant
// (C), crossed with construction type 1 (profile-curve sweep with drift
// curve gamma) or type 2 (translation along a fixed direction over a scaled
// circle).
enum class Family { NC1, NC2, C1, C2 };

const char* family_name(Family f);  // "NC-1", "NC-2", "C-1", "C-2"
std::optional<Family> family_from_name(const std::string& name);
bool is_type1(Family f);          // NC1 or C1 (gamma/psi present)
bool is_constant_angle(Family f); // C1 or C2

// Input data for one generated surface.
struct GeneratorRecipe {
  Family family = Family::NC1;
  // Angle profile theta(s); must be constant for the C-* families and must
  // stay within (theta_band, pi/2 - theta_band) on the s-domain.
  SmoothFunction1D theta = SmoothFunction1D::constant(0.75, Interval{-100, 100});
  SphereCurve phi;                       // unit-speed profile curve
  std::optional<SmoothFunction1D> psi;   // type-1 drift profile (default 0)
  Real s0 = 0.0;                         // quadrature anchor in s
  Real t0 = 0.0;                         // quadrature anchor in t (type 1)
  Real rho = 1.0;                        // circle scale (type 2)
  std::optional<Interval> s_domain;      // default [s0+0.05, s0+1.2]
  std::optional<Interval> t_domain;      // default [t0, t0+2.8] clipped to phi
  Real quad_tol = 1e-10;
  std::string label;
};

// Metadata the generator attaches to the surface; closed forms used by the
// verification tests.
struct GeneratedInfo {
  Family family = Family::NC1;
  std::string family_label;
  Real s0 = 0, t0 = 0;
  Real rho = std::numeric_limits<Real>::quiet_NaN();      // type 2 scale
  Real rho_eff = std::numeric_limits<Real>::quiet_NaN();  // rho * circle radius
  Real theta0 = std::numeric_limits<Real>::quiet_NaN();   // C-* constant angle

  std::function<Real(Real)> theta, dtheta;  // angle profile and derivative
  std::function<Real(Real)> psi, dpsi;      // type 1 only, else empty
  std::function<Real(Real)> A, B;           // cumulative cos/sin integrals
  std::function<Vector4(Real)> gamma;       // type 1 drift curve, else empty

  std::function<Real(Real, Real)> m;    // closed-form sqrt(G)
  std::function<Real(Real, Real)> m_s;  // closed-form d(sqrt G)/ds

  SphereCurve phi;
  std::optional<Vector4> circle_axis;
  std::optional<Real> circle_radius, circle_height;
  std::optional<Real> kappa_g;  // geodesic curvature of a circle profile
};

// Build the surface with analytic first and second partial derivatives.
// Throws RecipeError when a recipe invariant is violated.
SurfacePatch generate(const GeneratorRecipe& recipe);

// The drift curve gamma(t) of a type-1 recipe, with analytic derivatives
// gamma' = psi phi' (NC-1) or gamma' = sin(theta0) psi phi' (C-1).
Curve4 gamma_curve(const GeneratorRecipe& recipe);

}  // namespace cpd4
