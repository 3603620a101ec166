#pragma once

#include <functional>
#include <memory>
#include <string>

#include "cpd4/types.hpp"

namespace cpd4 {

struct GeneratedInfo;  // metadata attached by the family generators

// Second-order jet of a surface at a base point (s,t).  Mixed partials are
// symmetric, so only xst is stored.
struct Jet2 {
  Real s = 0.0;
  Real t = 0.0;
  Vector4 x = Vector4::Zero();
  Vector4 xs = Vector4::Zero();
  Vector4 xt = Vector4::Zero();
  Vector4 xss = Vector4::Zero();
  Vector4 xst = Vector4::Zero();
  Vector4 xtt = Vector4::Zero();
};

// A parametric surface patch (s,t) -> R^4.  When `analytic_jet` is set it is
// used for all derivative evaluation; otherwise jets fall back to central
// differences of `position`, which requires a margin to the domain boundary.
struct SurfacePatch {
  std::function<Vector4(Real, Real)> position;
  std::function<Jet2(Real, Real)> analytic_jet;  // may be empty
  Interval s_domain{0.0, 1.0};
  Interval t_domain{0.0, 1.0};
  std::string label;
  std::shared_ptr<const GeneratedInfo> generated;  // set for generated families

  bool has_analytic_jet() const { return static_cast<bool>(analytic_jet); }
};

// Evaluate the full second-order jet at (s,t).
Jet2 jet(const SurfacePatch& surface, Real s, Real t);

}  // namespace cpd4
