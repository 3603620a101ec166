#include "cpd4/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cpd4 {

namespace {

void check_stencil(const SmoothFunction1D& f, Real x, Real h) {
  const Real pad = 1e-12 * (1.0 + std::abs(x));
  if (!f.domain().contains(x - h, pad) || !f.domain().contains(x + h, pad)) {
    throw DomainError("central difference stencil leaves the domain", x);
  }
}

constexpr int kMaxSimpsonDepth = 30;

Real simpson(Real a, Real fa, Real fm, Real b, Real fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson with Richardson error control.
Real adaptive_simpson(const std::function<Real(Real)>& f, Real a, Real fa,
                      Real b, Real fb, Real m, Real fm, Real whole, Real tol,
                      int depth, bool& converged) {
  const Real lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const Real flm = f(lm), frm = f(rm);
  const Real left = simpson(a, fa, flm, m, fm);
  const Real right = simpson(m, fm, frm, b, fb);
  const Real delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || (b - a) < 1e-14 * (1.0 + std::abs(a))) {
    return left + right + delta / 15.0;
  }
  if (depth >= kMaxSimpsonDepth) {
    converged = false;
    return left + right + delta / 15.0;
  }
  return adaptive_simpson(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth + 1,
                          converged) +
         adaptive_simpson(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth + 1,
                          converged);
}

// 5-point Gauss-Legendre on [a, b]; used for the dense prefix tables where
// the per-cell width makes the rule effectively exact.
Real gauss5(const std::function<Real(Real)>& f, Real a, Real b) {
  static const Real xs[5] = {-0.9061798459386640, -0.5384693101056831, 0.0,
                             0.5384693101056831, 0.9061798459386640};
  static const Real ws[5] = {0.2369268850561891, 0.4786286704993665,
                             0.5688888888888889, 0.4786286704993665,
                             0.2369268850561891};
  const Real c = 0.5 * (a + b), h = 0.5 * (b - a);
  Real acc = 0.0;
  for (int i = 0; i < 5; ++i) acc += ws[i] * f(c + h * xs[i]);
  return h * acc;
}

}  // namespace

Real central_diff_1(const SmoothFunction1D& f, Real x, Real h) {
  check_stencil(f, x, h);
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

Real central_diff_2(const SmoothFunction1D& f, Real x, Real h) {
  check_stencil(f, x, h);
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

Real integrate(const std::function<Real(Real)>& f, Real a, Real b, Real tol) {
  if (tol <= 0.0) throw Error("integrate: tol must be positive");
  if (a == b) return 0.0;
  if (a > b) return -integrate(f, b, a, tol);
  const Real fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
  const Real whole = simpson(a, fa, fm, b, fb);
  bool converged = true;
  const Real result =
      adaptive_simpson(f, a, fa, b, fb, m, fm, whole, tol, 0, converged);
  if (!converged) {
    throw QuadratureError("integrate: max refinement depth reached", result,
                          tol);
  }
  return result;
}

Real integrate(const SmoothFunction1D& f, Real a, Real b, Real tol) {
  const Real pad = 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b)));
  if (!f.domain().contains(a, pad) || !f.domain().contains(b, pad)) {
    throw DomainError("integrate: endpoint outside domain",
                      f.domain().contains(a, pad) ? b : a);
  }
  return integrate(std::function<Real(Real)>([&f](Real x) { return f(x); }), a,
                   b, tol);
}

CumulativeIntegral::CumulativeIntegral(std::function<Real(Real)> f, Real x0,
                                       Interval domain, int cells)
    : f_(std::move(f)), domain_(domain) {
  if (cells < 2) throw Error("CumulativeIntegral: need at least 2 cells");
  if (!domain.contains(x0, 1e-12)) {
    throw DomainError("CumulativeIntegral: base point outside domain", x0);
  }
  dx_ = domain.length() / cells;
  nodes_.resize(cells + 1);
  slopes_.resize(cells + 1);
  nodes_[0] = 0.0;
  slopes_[0] = f_(domain.lo);
  for (int i = 1; i <= cells; ++i) {
    const Real a = domain.lo + (i - 1) * dx_;
    const Real b = domain.lo + i * dx_;
    nodes_[i] = nodes_[i - 1] + gauss5(f_, a, b);
    slopes_[i] = f_(b);
  }
  offset_ = 0.0;
  offset_ = value(x0);
}

Real CumulativeIntegral::value(Real x) const {
  if (nodes_.empty()) throw Error("CumulativeIntegral: empty table");
  const Real pad = 1e-9 * (1.0 + std::abs(x));
  if (!domain_.contains(x, pad)) {
    throw DomainError("CumulativeIntegral: evaluation outside table", x);
  }
  const Real u = std::clamp((x - domain_.lo) / dx_, 0.0,
                            static_cast<Real>(nodes_.size() - 1));
  const int i =
      std::min(static_cast<int>(u), static_cast<int>(nodes_.size()) - 2);
  const Real w = u - i;
  // cubic Hermite on the cell with exact end slopes
  const Real h00 = (1.0 + 2.0 * w) * (1.0 - w) * (1.0 - w);
  const Real h10 = w * (1.0 - w) * (1.0 - w);
  const Real h01 = w * w * (3.0 - 2.0 * w);
  const Real h11 = w * w * (w - 1.0);
  return h00 * nodes_[i] + h10 * dx_ * slopes_[i] + h01 * nodes_[i + 1] +
         h11 * dx_ * slopes_[i + 1] - offset_;
}

namespace {

// Rejection of the standard basis axes against a set of orthonormal vectors.
// Lower axis indices are preferred; a later axis only wins when its rejection
// is better by a clear margin, so the choice is stable under small
// perturbations of the spanning set (a tilted plane keeps the plane's
// complement order).
Vector4 best_axis_rejection(const std::vector<Vector4>& basis) {
  Vector4 best = Vector4::Zero();
  Real best_norm = 0.0;
  for (int axis = 0; axis < 4; ++axis) {
    Vector4 r = Vector4::Unit(axis);
    for (const auto& b : basis) r -= r.dot(b) * b;
    const Real n = r.norm();
    if (n > best_norm * (1.0 + 1e-3)) {
      best_norm = n;
      best = r;
    }
  }
  if (best_norm < 1e-8) {
    throw RegularityError("orthonormal completion: degenerate span");
  }
  return best / best.norm();
}

}  // namespace

std::pair<Vector4, Vector4> orthonormal_complement(const Vector4& u,
                                                   const Vector4& v) {
  const Real un = u.norm();
  if (un < 1e-12) throw RegularityError("orthonormal_complement: |u| ~ 0");
  const Vector4 b1 = u / un;
  Vector4 w = v - v.dot(b1) * b1;
  const Real wn = w.norm();
  if (wn < 1e-10 * std::max(Real(1), v.norm())) {
    throw RegularityError(
        "orthonormal_complement: u, v linearly dependent (degenerate tangent "
        "plane)");
  }
  const Vector4 b2 = w / wn;
  const Vector4 n1 = best_axis_rejection({b1, b2});
  const Vector4 n2 = best_axis_rejection({b1, b2, n1});
  return {n1, n2};
}

Vector4 complete_orthonormal(const Vector4& a, const Vector4& b,
                             const Vector4& c) {
  return best_axis_rejection({a, b, c});
}

Vector4 canonical_sign(const Vector4& v, Real tol) {
  for (int i = 0; i < 4; ++i) {
    if (std::abs(v[i]) > tol) return v[i] > 0 ? v : Vector4(-v);
  }
  return v;
}

Vector2 canonical_sign(const Vector2& v, Real tol) {
  for (int i = 0; i < 2; ++i) {
    if (std::abs(v[i]) > tol) return v[i] > 0 ? v : Vector2(-v);
  }
  return v;
}

std::array<EigenPair, 2> sym2_eigen(const Sym2& m) {
  EigenPair p, q;
  if (m.a12 == 0.0) {
    p = {m.a11, Vector2(1.0, 0.0)};
    q = {m.a22, Vector2(0.0, 1.0)};
  } else {
    const Real mean = 0.5 * (m.a11 + m.a22);
    const Real half_gap = 0.5 * (m.a11 - m.a22);
    const Real radius = std::hypot(half_gap, m.a12);
    const Real l1 = mean + radius;
    const Real l2 = mean - radius;
    auto eigvec = [&](Real lambda) {
      // pick the better-conditioned of the two row equations
      Vector2 v1(m.a12, lambda - m.a11);
      Vector2 v2(lambda - m.a22, m.a12);
      Vector2 v = v1.norm() >= v2.norm() ? v1 : v2;
      return canonical_sign(Vector2(v.normalized()), 1e-300);
    };
    p = {l1, eigvec(l1)};
    q = {l2, eigvec(l2)};
  }
  const Real ax_p = std::abs(p.vector.x());
  const Real ax_q = std::abs(q.vector.x());
  bool p_first;
  if (std::abs(ax_p - ax_q) > 1e-14) {
    p_first = ax_p > ax_q;
  } else {
    p_first = p.value >= q.value;
  }
  if (!p_first) std::swap(p, q);
  return {p, q};
}

}  // namespace cpd4
