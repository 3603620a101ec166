#pragma once

#include <optional>
#include <utility>

#include "cpd4/numerics.hpp"
#include "cpd4/surface.hpp"
#include "cpd4/types.hpp"

namespace cpd4 {

struct FirstFundamentalForm {
  Real E = 0.0, F = 0.0, G = 0.0;
  Real det() const { return E * G - F * F; }
};

// Metric coefficients E=<xs,xs>, F=<xs,xt>, G=<xt,xt>.
// Throws RegularityError when EG - F^2 <= 1e-10.
FirstFundamentalForm first_fundamental_form(const Jet2& j);

// Deterministic orthonormal basis of the normal space at a regular point.
std::pair<Vector4, Vector4> normal_basis(const Jet2& j);

// Coordinates (a,b) of a tangent vector v = a*xs + b*xt, solved through the
// metric.  Throws FrameError when v is not in the tangent plane.
Vector2 tangent_coordinates(const Jet2& j, const FirstFundamentalForm& ff,
                            const Vector4& v);

// Scalar second-fundamental-form data h^b_ij = <D^2x(e_i,e_j), e_b> in a
// given orthonormal frame, plus the shape-operator matrices built from them.
struct SecondFundamentalData {
  Vector4 e1, e2, e3, e4;
  Real h3_11 = 0, h3_12 = 0, h3_22 = 0;
  Real h4_11 = 0, h4_12 = 0, h4_22 = 0;
  Sym2 S3{}, S4{};
};

// Frames must be orthonormal (Gram deviation <= 1e-8) with e1,e2 spanning the
// tangent plane of the jet; otherwise a FrameError is thrown.
SecondFundamentalData second_fundamental(const Jet2& j, const Vector4& e1,
                                         const Vector4& e2, const Vector4& e3,
                                         const Vector4& e4,
                                         const FirstFundamentalForm& ff);

// H = 1/2 [(h3_11+h3_22) e3 + (h4_11+h4_22) e4].
Vector4 mean_curvature(const SecondFundamentalData& sfd);

// K = (h3_11 h3_22 - h3_12^2) + (h4_11 h4_22 - h4_12^2).
Real gauss_curvature_extrinsic(const SecondFundamentalData& sfd);

// Intrinsic K = -m_ss/m with m = sqrt(G), valid only in an adapted chart with
// E = 1, F = 0 (checked at the stencil points to 1e-6; violations throw
// ChartError).  step <= 0 selects the default second-derivative step.
Real gauss_curvature_intrinsic(const SurfacePatch& surface, Real s, Real t,
                               Real step = 0.0);

// Frobenius norm of S3 S4 - S4 S3 (zero iff the normal bundle is flat).
Real normal_commutator(const SecondFundamentalData& sfd);

struct InvariantReport {
  Real s = 0, t = 0;
  Vector4 H = Vector4::Zero();
  Real K = 0.0;
  std::optional<Real> K_intrinsic;  // absent when the chart check fails
  Real commutator_norm = 0.0;
};

// Convenience: evaluate all pointwise invariants in a deterministic frame.
InvariantReport invariant_report(const SurfacePatch& surface, Real s, Real t);

}  // namespace cpd4
