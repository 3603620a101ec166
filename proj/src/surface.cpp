#include "cpd4/surface.hpp"

#include <cmath>
#include <sstream>

#include "cpd4/errors.hpp"
#include "cpd4/numerics.hpp"

namespace cpd4 {

namespace {

void check_inside(const Interval& dom, Real v, const char* axis) {
  const Real pad = 1e-9 * std::max(Real(1), dom.length());
  if (!dom.contains(v, pad)) {
    std::ostringstream os;
    os << axis << "=" << v << " outside patch domain [" << dom.lo << ", "
       << dom.hi << "]";
    throw DomainError(os.str(), v);
  }
}

void check_margin(const Interval& dom, Real v, Real margin, const char* axis) {
  if (v - margin < dom.lo || v + margin > dom.hi) {
    std::ostringstream os;
    os << "finite-difference jet needs " << axis << "=" << v
       << " at least " << margin << " inside the patch domain [" << dom.lo
       << ", " << dom.hi << "]; supply analytic partials or shrink the grid";
    throw DomainError(os.str(), v);
  }
}

}  // namespace

Jet2 jet(const SurfacePatch& surface, Real s, Real t) {
  check_inside(surface.s_domain, s, "s");
  check_inside(surface.t_domain, t, "t");

  if (surface.analytic_jet) {
    Jet2 j = surface.analytic_jet(s, t);
    j.s = s;
    j.t = t;
    return j;
  }

  const Real hs1 = fd_step_1(s), ht1 = fd_step_1(t);
  const Real hs2 = fd_step_2(s), ht2 = fd_step_2(t);
  check_margin(surface.s_domain, s, 2.0 * hs2, "s");
  check_margin(surface.t_domain, t, 2.0 * ht2, "t");

  const auto& x = surface.position;
  Jet2 j;
  j.s = s;
  j.t = t;
  j.x = x(s, t);
  j.xs = central_diff_1_of([&](Real u) { return x(u, t); }, s, hs1);
  j.xt = central_diff_1_of([&](Real v) { return x(s, v); }, t, ht1);
  j.xss = central_diff_2_of([&](Real u) { return x(u, t); }, s, hs2);
  j.xtt = central_diff_2_of([&](Real v) { return x(s, v); }, t, ht2);
  j.xst = (x(s + hs2, t + ht2) - x(s + hs2, t - ht2) - x(s - hs2, t + ht2) +
           x(s - hs2, t - ht2)) /
          (4.0 * hs2 * ht2);
  return j;
}

}  // namespace cpd4
