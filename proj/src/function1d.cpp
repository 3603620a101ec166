#include "cpd4/function1d.hpp"

#include <cmath>

#include "cpd4/numerics.hpp"

namespace cpd4 {

Real SmoothFunction1D::operator()(Real x) const {
  if (!f_) throw Error("SmoothFunction1D: empty evaluation rule");
  if (!domain_.contains(x, 1e-12 * (1.0 + std::abs(x)))) {
    throw DomainError("SmoothFunction1D: evaluation outside domain", x);
  }
  return f_(x);
}

Real SmoothFunction1D::derivative(Real x) const {
  if (df_) {
    if (!domain_.contains(x, 1e-12 * (1.0 + std::abs(x)))) {
      throw DomainError("SmoothFunction1D: derivative outside domain", x);
    }
    return df_(x);
  }
  return central_diff_1(*this, x, fd_step_1(x));
}

SmoothFunction1D SmoothFunction1D::with_domain(Interval domain) const {
  SmoothFunction1D out = *this;
  out.domain_ = domain;
  return out;
}

SmoothFunction1D SmoothFunction1D::constant(Real c, Interval domain) {
  return {[c](Real) { return c; }, [](Real) { return 0.0; }, domain};
}

SmoothFunction1D SmoothFunction1D::linear(Real slope, Real intercept,
                                          Interval domain) {
  return {[=](Real x) { return slope * x + intercept; },
          [=](Real) { return slope; }, domain};
}

SmoothFunction1D SmoothFunction1D::affine_sin(Real a, Real b, Real omega,
                                              Real phase, Interval domain) {
  return {[=](Real x) { return a + b * std::sin(omega * x + phase); },
          [=](Real x) { return b * omega * std::cos(omega * x + phase); },
          domain};
}

SmoothFunction1D SmoothFunction1D::polynomial(std::vector<Real> coeffs,
                                              Interval domain) {
  auto eval = [coeffs](Real x) {
    Real acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  };
  auto deval = [coeffs](Real x) {
    Real acc = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 1;) {
      acc = acc * x + static_cast<Real>(i) * coeffs[i];
    }
    return acc;
  };
  return {eval, deval, domain};
}

}  // namespace cpd4
