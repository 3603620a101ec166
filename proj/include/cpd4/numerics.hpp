#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "cpd4/errors.hpp"
#include "cpd4/function1d.hpp"
#include "cpd4/types.hpp"

namespace cpd4 {

// Default finite-difference steps (first / second derivative).
inline Real fd_step_1(Real x) { return std::max(1e-5, 1e-5 * std::abs(x)); }
inline Real fd_step_2(Real x) { return std::max(1e-4, 1e-4 * std::abs(x)); }

/// (f(x+h) - f(x-h)) / 2h on any callable returning a scalar or vector.
template <typename F>
auto central_diff_1_of(F&& f, Real x, Real h) {
  using V = std::decay_t<decltype(f(x))>;
  return V((f(x + h) - f(x - h)) / (2.0 * h));
}

/// (f(x+h) - 2f(x) + f(x-h)) / h^2 on any callable returning a scalar or
/// vector.
template <typename F>
auto central_diff_2_of(F&& f, Real x, Real h) {
  using V = std::decay_t<decltype(f(x))>;
  return V((f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h));
}

Real central_diff_1(const SmoothFunction1D& f, Real x, Real h);
Real central_diff_2(const SmoothFunction1D& f, Real x, Real h);

/// Adaptive Simpson quadrature of `f` over [a, b] with absolute error <= tol.
/// Antisymmetric under swapping the endpoints.
Real integrate(const SmoothFunction1D& f, Real a, Real b, Real tol);
Real integrate(const std::function<Real(Real)>& f, Real a, Real b, Real tol);

/// Tabulated antiderivative F(x) = int_{x0}^x f, built once on a dense grid
/// and evaluated by cubic Hermite interpolation with the integrand as the
/// exact slope at the nodes.
class CumulativeIntegral {
 public:
  CumulativeIntegral() = default;
  CumulativeIntegral(std::function<Real(Real)> f, Real x0, Interval domain,
                     int cells = 2048);

  Real value(Real x) const;
  Real derivative(Real x) const { return f_(x); }
  const Interval& domain() const { return domain_; }

 private:
  std::function<Real(Real)> f_;
  Interval domain_{0.0, 0.0};
  Real dx_ = 0.0;
  std::vector<Real> nodes_;   // prefix values from domain_.lo
  std::vector<Real> slopes_;  // f at the nodes
  Real offset_ = 0.0;         // prefix value at x0
};

/// Orthonormal pair spanning the orthogonal complement of span{u, v} in R^4.
/// Gram-Schmidt seeded from the standard basis, picking the axis with the
/// largest rejection norm first (ties broken by lowest index).
std::pair<Vector4, Vector4> orthonormal_complement(const Vector4& u,
                                                   const Vector4& v);

/// Fourth unit vector orthogonal to three given orthonormal vectors,
/// same pivot rule as orthonormal_complement.
Vector4 complete_orthonormal(const Vector4& a, const Vector4& b,
                             const Vector4& c);

/// Flip `v` so that its first component of magnitude > tol is positive.
Vector4 canonical_sign(const Vector4& v, Real tol = 1e-9);
Vector2 canonical_sign(const Vector2& v, Real tol = 1e-9);

/// Symmetric 2x2 matrix stored by its three independent entries.
struct Sym2 {
  Real a11 = 0.0, a12 = 0.0, a22 = 0.0;

  Matrix2 matrix() const {
    Matrix2 m;
    m << a11, a12, a12, a22;
    return m;
  }
  Real trace() const { return a11 + a22; }
  Real det() const { return a11 * a22 - a12 * a12; }
};

struct EigenPair {
  Real value = 0.0;
  Vector2 vector = Vector2::Zero();
};

/// Closed-form eigendecomposition of a symmetric 2x2 matrix. Eigenvectors are
/// unit with the first nonzero component positive; the pair whose eigenvector
/// is closest to the first axis is reported first (ties: larger eigenvalue).
std::array<EigenPair, 2> sym2_eigen(const Sym2& m);

}  // namespace cpd4
