#include "cpd4/curve4.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "cpd4/errors.hpp"
#include "cpd4/numerics.hpp"

namespace cpd4 {

namespace {

void check_domain(const Interval& dom, Real u) {
  const Real pad = 1e-9 * std::max(Real(1), dom.length());
  if (!dom.contains(u, pad)) {
    std::ostringstream os;
    os << "curve parameter " << u << " outside domain [" << dom.lo << ", "
       << dom.hi << "]";
    throw DomainError(os.str(), u);
  }
}

}  // namespace

Vector4 Curve4::eval(Real u) const {
  check_domain(domain, u);
  return position(u);
}

Vector4 Curve4::deriv(Real u) const {
  check_domain(domain, u);
  if (d1) return d1(u);
  const auto f = [this](Real v) { return position(v); };
  const Real h = fd_step_1(u);
  const Real slack = 1e-12 * std::max(Real(1), domain.length());
  if (u - h >= domain.lo - slack && u + h <= domain.hi + slack) {
    return central_diff_1_of(f, u, h);
  }
  // Second-order one-sided stencils keep endpoint evaluations inside the
  // domain.
  if (u + 2 * h <= domain.hi + slack) {
    return Vector4((-3.0 * f(u) + 4.0 * f(u + h) - f(u + 2 * h)) / (2.0 * h));
  }
  if (u - 2 * h >= domain.lo - slack) {
    return Vector4((3.0 * f(u) - 4.0 * f(u - h) + f(u - 2 * h)) / (2.0 * h));
  }
  throw DomainError("curve domain too short for finite differences", u);
}

Vector4 Curve4::second(Real u) const {
  check_domain(domain, u);
  if (d2) return d2(u);
  const Real slack = 1e-12 * std::max(Real(1), domain.length());
  if (d1) {
    const auto g = [this](Real v) { return d1(v); };
    const Real h = fd_step_1(u);
    if (u - h >= domain.lo - slack && u + h <= domain.hi + slack) {
      return central_diff_1_of(g, u, h);
    }
    if (u + 2 * h <= domain.hi + slack) {
      return Vector4((-3.0 * g(u) + 4.0 * g(u + h) - g(u + 2 * h)) /
                     (2.0 * h));
    }
    if (u - 2 * h >= domain.lo - slack) {
      return Vector4((3.0 * g(u) - 4.0 * g(u - h) + g(u - 2 * h)) / (2.0 * h));
    }
    throw DomainError("curve domain too short for finite differences", u);
  }
  const auto f = [this](Real v) { return position(v); };
  const Real h = fd_step_2(u);
  if (u - h >= domain.lo - slack && u + h <= domain.hi + slack) {
    return central_diff_2_of(f, u, h);
  }
  if (u + 3 * h <= domain.hi + slack) {
    return Vector4(
        (2.0 * f(u) - 5.0 * f(u + h) + 4.0 * f(u + 2 * h) - f(u + 3 * h)) /
        (h * h));
  }
  if (u - 3 * h >= domain.lo - slack) {
    return Vector4(
        (2.0 * f(u) - 5.0 * f(u - h) + 4.0 * f(u - 2 * h) - f(u - 3 * h)) /
        (h * h));
  }
  throw DomainError("curve domain too short for finite differences", u);
}

Real Curve4::speed(Real u) const { return deriv(u).norm(); }

Curve4 arc_length_reparametrize(const Curve4& c, const Interval& range,
                                Real tol) {
  if (!(range.length() > 0)) {
    throw DomainError("arc-length range must have positive length",
                      range.length());
  }
  constexpr Real kSpeedThreshold = 1e-8;
  constexpr int kSpeedSamples = 1024;

  // Capture the source curve by value so the returned closures own it.
  const auto base = std::make_shared<const Curve4>(c);

  // Regularity scan: speed must stay bounded away from zero.
  for (int i = 0; i <= kSpeedSamples; ++i) {
    const Real u =
        range.lo + range.length() * static_cast<Real>(i) / kSpeedSamples;
    const Real v = base->speed(u);
    if (!(v > kSpeedThreshold)) {
      std::ostringstream os;
      os << "curve speed " << v << " below threshold " << kSpeedThreshold
         << " near parameter u=" << u;
      throw RegularityError(os.str());
    }
  }

  // Cumulative length table: len(u) = integral of |c'| from range.lo to u.
  const Real quad_tol = std::min(tol, Real(1e-10));
  (void)quad_tol;  // table accuracy is governed by its cell count
  auto speed_fn = [base](Real u) { return base->speed(u); };
  const auto len = std::make_shared<const CumulativeIntegral>(
      std::function<Real(Real)>(speed_fn), range.lo, range, 4096);
  const Real total = len->value(range.hi);

  // Invert the monotone length function with safeguarded Newton iterations.
  auto invert = [base, len, range, total](Real s) -> Real {
    s = std::clamp(s, Real(0), total);
    Real lo = range.lo, hi = range.hi;
    Real u = range.lo + (s / total) * range.length();
    for (int iter = 0; iter < 100; ++iter) {
      const Real err = len->value(u) - s;
      if (std::abs(err) < 1e-14 * std::max(Real(1), total)) break;
      if (err > 0) {
        hi = std::min(hi, u);
      } else {
        lo = std::max(lo, u);
      }
      const Real v = base->speed(u);
      Real next = u - err / v;
      if (!(next > lo) || !(next < hi)) next = 0.5 * (lo + hi);
      if (std::abs(next - u) < 1e-16 * std::max(Real(1), range.length())) {
        u = next;
        break;
      }
      u = next;
    }
    return std::clamp(u, range.lo, range.hi);
  };

  Curve4 out;
  out.domain = Interval{0.0, total};
  out.position = [base, invert](Real s) { return base->position(invert(s)); };
  out.d1 = [base, invert](Real s) {
    const Real u = invert(s);
    const Vector4 du = base->deriv(u);
    return Vector4(du / du.norm());
  };
  out.d2 = [base, invert](Real s) {
    const Real u = invert(s);
    const Vector4 du = base->deriv(u);
    const Vector4 ddu = base->second(u);
    const Real v2 = du.squaredNorm();
    // c~'' = c''/v^2 - c' <c',c''>/v^4  (chain rule for s -> u(s))
    return Vector4(ddu / v2 - du * (du.dot(ddu) / (v2 * v2)));
  };
  return out;
}

}  // namespace cpd4
