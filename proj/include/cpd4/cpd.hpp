#pragma once

#include <optional>
#include <vector>

#include "cpd4/geometry.hpp"
#include "cpd4/surface.hpp"
#include "cpd4/types.hpp"

namespace cpd4 {

// Fixed ambient direction and tolerance profile for the CPD analysis.
struct CpdContext {
  Vector4 k = Vector4(1.0, 0.0, 0.0, 0.0);
  Real eigen_align_tol = 1e-5;  // off-diagonal threshold for the verdict
  Real residual_tol = 1e-4;     // threshold for the first-order residuals
  Real theta_band = 1e-4;       // admissible distance of theta from {0, pi/2}
};

// Orthonormal frame with k = cos(theta) e1 + sin(theta) e3; e1, e2 tangent
// and e3, e4 normal.
struct AdaptedFrame {
  Vector4 e1, e2, e3, e4;
  Real theta = 0.0;
};

// Decompose k into tangential and normal parts at the jet's base point and
// return the adapted frame.  Throws DegenerateDirectionError when theta falls
// within `theta_band` of 0 or pi/2.
AdaptedFrame decompose_direction(const Jet2& j, const CpdContext& ctx);

// Uniform evaluation grid over the patch domain, inset from the boundary by
// `margin` (a fraction of each domain length).
struct GridSpec {
  int ns = 20;
  int nt = 20;
  Real margin = 0.02;

  std::vector<Real> s_nodes(const SurfacePatch& surface) const;
  std::vector<Real> t_nodes(const SurfacePatch& surface) const;
};

enum class Verdict { Cpd, NotCpd, Inconclusive };

const char* to_string(Verdict v);

// Per-grid-point record retained for reporting.
struct CpdPointRecord {
  Real s = 0, t = 0;
  bool excluded = false;
  Real theta = 0;
  Real h3_11 = 0, h3_12 = 0, h3_22 = 0;
  Real h4_11 = 0, h4_12 = 0, h4_22 = 0;
  Real e1_theta = 0;  // directional derivative of theta along e1
};

struct CpdReport {
  int ns = 0, nt = 0;
  std::vector<Real> s_values, t_values;
  std::vector<CpdPointRecord> points;  // row-major (s-major), size ns*nt
  int excluded = 0;

  // Maxima over the included grid points.
  Real max_h3_12 = 0, max_h4_12 = 0;            // verdict off-diagonals
  Real max_h4_11 = 0, max_h3_11_plus_e1theta = 0;  // first-order diagnostics
  Verdict verdict = Verdict::Inconclusive;

  Real max_offdiag() const { return std::max(max_h3_12, max_h4_12); }
};

// Evaluate the CPD predicate over a grid: at each node build the adapted
// frame, compute the second fundamental form in it, and compare the
// off-diagonal entries against the tolerance.  Degenerate nodes are excluded;
// more than 20% exclusions makes the verdict Inconclusive.
CpdReport verify_cpd(const SurfacePatch& surface, const CpdContext& ctx,
                     const GridSpec& grid);

// First-order residuals of the structure equations, evaluated with coordinate
// finite differences in the adapted chart (E=1, F=0, e1 = d/ds,
// e2 = (1/m) d/dt).  Throws ChartError when the metric is not in this form at
// a stencil point.
struct StructureResiduals {
  Real theta = 0;
  Real m = 0;
  Real r_codazzi_a = 0;  // e1(h3_22) - tan(theta) h3_22 (h3_11 - h3_22)
  Real r_codazzi_b = 0;  // e1(h4_22) + tan(theta) h3_22 h4_22
  Real r_theta = 0;      // e2(theta)
  Real r_m = 0;          // m_s - m tan(theta) h3_22
  SecondFundamentalData center;
};

StructureResiduals structure_residuals(const SurfacePatch& surface,
                                       const CpdContext& ctx, Real s, Real t,
                                       Real step = 0.0);

// Theta over a grid with row-wise t-derivatives and column-wise
// s-derivatives (central differences of the grid values).
struct ThetaField {
  int ns = 0, nt = 0;
  std::vector<Real> s_values, t_values;
  std::vector<Real> theta;  // row-major, NaN at excluded nodes
  int excluded = 0;
  Real max_dtheta_dt = 0;
  Real max_dtheta_ds = 0;
};

ThetaField theta_field(const SurfacePatch& surface, const CpdContext& ctx,
                       const GridSpec& grid);

// Angle between the first coordinate axis and the nearest eigenvector of a
// shape-operator matrix (0 when e1 is a principal direction).
Real eigenvector_misalignment(const Sym2& S);

// Combined analysis used by the command layer: predicate grid, theta field,
// and structure-equation residuals sampled on a coarse sub-grid.
struct Analysis {
  CpdReport cpd;
  ThetaField theta;
  std::optional<Real> max_codazzi_a, max_codazzi_b, max_theta_eq, max_m_eq;
  int chart_violations = 0;  // residual sample points rejected by ChartError
  int residual_samples = 0;

  Real max_codazzi() const {
    Real m = 0;
    if (max_codazzi_a) m = std::max(m, *max_codazzi_a);
    if (max_codazzi_b) m = std::max(m, *max_codazzi_b);
    return m;
  }
};

Analysis analyze(const SurfacePatch& surface, const CpdContext& ctx,
                 const GridSpec& grid);

}  // namespace cpd4
