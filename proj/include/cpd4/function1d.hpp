#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cpd4/errors.hpp"
#include "cpd4/types.hpp"

namespace cpd4 {

/// A scalar function of one real variable on a fixed interval, with an
/// optional analytic first derivative. Evaluation is domain-checked.
class SmoothFunction1D {
 public:
  using Fn = std::function<Real(Real)>;

  SmoothFunction1D() = default;
  SmoothFunction1D(Fn f, Interval domain) : f_(std::move(f)), domain_(domain) {}
  SmoothFunction1D(Fn f, Fn df, Interval domain)
      : f_(std::move(f)), df_(std::move(df)), domain_(domain) {}

  Real operator()(Real x) const;

  bool has_derivative() const { return static_cast<bool>(df_); }

  /// Analytic derivative when present, central difference otherwise.
  Real derivative(Real x) const;

  const Interval& domain() const { return domain_; }

  /// Same rules on a different interval.
  SmoothFunction1D with_domain(Interval domain) const;

  // Named profiles used by recipes and configs.
  static SmoothFunction1D constant(Real c, Interval domain);
  static SmoothFunction1D linear(Real slope, Real intercept, Interval domain);
  static SmoothFunction1D affine_sin(Real a, Real b, Real omega, Real phase,
                                     Interval domain);
  static SmoothFunction1D polynomial(std::vector<Real> coeffs, Interval domain);

 private:
  Fn f_;
  Fn df_;
  Interval domain_{0.0, 0.0};
};

}  // namespace cpd4
