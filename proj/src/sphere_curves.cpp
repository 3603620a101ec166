#include "cpd4/sphere_curves.hpp"

#include <Eigen/Geometry>
#include <cmath>
#include <sstream>

#include "cpd4/errors.hpp"
#include "cpd4/numerics.hpp"

namespace cpd4 {

namespace {

constexpr Real kWideDomain = 50.0;

// 3-D cross product on the hyperplane components (indices 1..3).
Vector4 hyper_cross(const Vector4& a, const Vector4& b) {
  Vector4 c = Vector4::Zero();
  c(1) = a(2) * b(3) - a(3) * b(2);
  c(2) = a(3) * b(1) - a(1) * b(3);
  c(3) = a(1) * b(2) - a(2) * b(1);
  return c;
}

// Deterministic unit vector in the hyperplane orthogonal to `axis`: the
// standard axis with the largest rejection, ties broken by lowest index.
Vector4 hyper_complement(const Vector4& axis) {
  int best = 1;
  Real best_norm = -1.0;
  for (int i = 1; i < 4; ++i) {
    Vector4 e = Vector4::Zero();
    e(i) = 1.0;
    const Real n = (e - e.dot(axis) * axis).norm();
    if (n > best_norm + 1e-14) {
      best_norm = n;
      best = i;
    }
  }
  Vector4 e = Vector4::Zero();
  e(best) = 1.0;
  const Vector4 u = e - e.dot(axis) * axis;
  return u / u.norm();
}

}  // namespace

SphereCurve great_circle() {
  SphereCurve phi;
  phi.curve.position = [](Real t) {
    return Vector4(0.0, std::cos(t), std::sin(t), 0.0);
  };
  phi.curve.d1 = [](Real t) {
    return Vector4(0.0, -std::sin(t), std::cos(t), 0.0);
  };
  phi.curve.d2 = [](Real t) {
    return Vector4(0.0, -std::cos(t), -std::sin(t), 0.0);
  };
  phi.curve.domain = Interval{-kWideDomain, kWideDomain};
  phi.unit_speed = true;
  phi.label = "great-circle";
  phi.circle_axis = Vector4(0.0, 0.0, 0.0, 1.0);
  phi.circle_radius = 1.0;
  phi.circle_height = 0.0;
  return phi;
}

SphereCurve rotated_great_circle() {
  const Eigen::Vector3d axis = Eigen::Vector3d(1.0, 2.0, 3.0).normalized();
  const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.7, axis).toRotationMatrix();

  auto lift = [rot](const Eigen::Vector3d& v) {
    return Vector4(0.0, (rot * v)(0), (rot * v)(1), (rot * v)(2));
  };

  SphereCurve phi;
  phi.curve.position = [lift](Real t) {
    return lift(Eigen::Vector3d(std::cos(t), std::sin(t), 0.0));
  };
  phi.curve.d1 = [lift](Real t) {
    return lift(Eigen::Vector3d(-std::sin(t), std::cos(t), 0.0));
  };
  phi.curve.d2 = [lift](Real t) {
    return lift(Eigen::Vector3d(-std::cos(t), -std::sin(t), 0.0));
  };
  phi.curve.domain = Interval{-kWideDomain, kWideDomain};
  phi.unit_speed = true;
  phi.label = "rotated-great-circle";
  phi.circle_axis = lift(Eigen::Vector3d(0.0, 0.0, 1.0));
  phi.circle_radius = 1.0;
  phi.circle_height = 0.0;
  return phi;
}

SphereCurve latitude_circle(Real z0) {
  if (!(std::abs(z0) < 1.0 - 1e-6)) {
    std::ostringstream os;
    os << "latitude height z0=" << z0 << " leaves no circle (need |z0| < 1)";
    throw RecipeError(os.str());
  }
  const Real r = std::sqrt(1.0 - z0 * z0);
  SphereCurve phi;
  phi.curve.position = [r, z0](Real t) {
    return Vector4(0.0, r * std::cos(t / r), r * std::sin(t / r), z0);
  };
  phi.curve.d1 = [r](Real t) {
    return Vector4(0.0, -std::sin(t / r), std::cos(t / r), 0.0);
  };
  phi.curve.d2 = [r](Real t) {
    return Vector4(0.0, -std::cos(t / r) / r, -std::sin(t / r) / r, 0.0);
  };
  phi.curve.domain = Interval{-kWideDomain, kWideDomain};
  phi.unit_speed = true;
  std::ostringstream label;
  label << "latitude-circle(z0=" << z0 << ")";
  phi.label = label.str();
  phi.circle_axis = Vector4(0.0, 0.0, 0.0, 1.0);
  phi.circle_radius = r;
  phi.circle_height = z0;
  return phi;
}

SphereCurve kappa_one_circle() {
  SphereCurve phi = latitude_circle(1.0 / std::sqrt(2.0));
  phi.label = "kappa-one-circle";
  return phi;
}

SphereCurve circle_about_axis(const Vector4& axis, Real z0) {
  if (std::abs(axis(0)) > 1e-12) {
    throw RecipeError(
        "circle axis must lie in the hyperplane (first component 0)");
  }
  const Real norm = axis.norm();
  if (!(norm > 1e-12)) {
    throw RecipeError("circle axis must be nonzero");
  }
  if (!(std::abs(z0) < 1.0 - 1e-6)) {
    std::ostringstream os;
    os << "circle height z0=" << z0 << " leaves no circle (need |z0| < 1)";
    throw RecipeError(os.str());
  }
  const Vector4 w = axis / norm;
  const Vector4 u = hyper_complement(w);
  const Vector4 v = hyper_cross(w, u);
  const Real r = std::sqrt(1.0 - z0 * z0);

  SphereCurve phi;
  phi.curve.position = [w, u, v, r, z0](Real t) {
    return Vector4(z0 * w + r * std::cos(t / r) * u + r * std::sin(t / r) * v);
  };
  phi.curve.d1 = [u, v, r](Real t) {
    return Vector4(-std::sin(t / r) * u + std::cos(t / r) * v);
  };
  phi.curve.d2 = [u, v, r](Real t) {
    return Vector4((-std::cos(t / r) * u - std::sin(t / r) * v) / r);
  };
  phi.curve.domain = Interval{-kWideDomain, kWideDomain};
  phi.unit_speed = true;
  std::ostringstream label;
  label << "circle(axis=[" << w(1) << "," << w(2) << "," << w(3)
        << "], z0=" << z0 << ")";
  phi.label = label.str();
  phi.circle_axis = w;
  phi.circle_radius = r;
  phi.circle_height = z0;
  return phi;
}

SphereCurve spherical_spiral(Real beta0, Real lambda) {
  const Interval u_range{0.25, 2.9};
  for (const Real u : {u_range.lo, u_range.hi}) {
    const Real beta = beta0 + lambda * u;
    if (!(beta > 0.1 && beta < 3.0416)) {
      std::ostringstream os;
      os << "spiral colatitude " << beta << " at u=" << u
         << " too close to a pole (need 0.1 < beta < pi-0.1)";
      throw RecipeError(os.str());
    }
  }

  Curve4 raw;
  raw.position = [beta0, lambda](Real u) {
    const Real b = beta0 + lambda * u;
    return Vector4(0.0, std::sin(b) * std::cos(u), std::sin(b) * std::sin(u),
                   std::cos(b));
  };
  raw.d1 = [beta0, lambda](Real u) {
    const Real b = beta0 + lambda * u;
    return Vector4(0.0,
                   lambda * std::cos(b) * std::cos(u) -
                       std::sin(b) * std::sin(u),
                   lambda * std::cos(b) * std::sin(u) +
                       std::sin(b) * std::cos(u),
                   -lambda * std::sin(b));
  };
  raw.d2 = [beta0, lambda](Real u) {
    const Real b = beta0 + lambda * u;
    const Real l2 = lambda * lambda;
    return Vector4(
        0.0,
        -l2 * std::sin(b) * std::cos(u) - 2.0 * lambda * std::cos(b) * std::sin(u) -
            std::sin(b) * std::cos(u),
        -l2 * std::sin(b) * std::sin(u) + 2.0 * lambda * std::cos(b) * std::cos(u) -
            std::sin(b) * std::sin(u),
        -l2 * std::cos(b));
  };
  raw.domain = u_range;

  SphereCurve phi;
  phi.curve = arc_length_reparametrize(raw, u_range, 1e-8);
  phi.unit_speed = true;
  std::ostringstream label;
  label << "spherical-spiral(beta0=" << beta0 << ", lambda=" << lambda << ")";
  phi.label = label.str();
  return phi;
}

std::vector<SphereCurve> sample_sphere_curves() {
  std::vector<SphereCurve> catalog;
  catalog.push_back(great_circle());
  catalog.push_back(rotated_great_circle());
  catalog.push_back(latitude_circle(0.4));
  catalog.push_back(kappa_one_circle());
  catalog.push_back(spherical_spiral(0.6, 0.2));
  return catalog;
}

void validate_sphere_curve(const SphereCurve& phi, Real tol_sphere,
                           Real tol_speed) {
  if (!phi.unit_speed) {
    throw RecipeError("profile curve '" + phi.label +
                      "' is not flagged unit-speed; reparametrize it first");
  }
  constexpr int kSamples = 64;
  const Interval dom = phi.curve.domain;
  for (int i = 0; i <= kSamples; ++i) {
    const Real t = dom.lo + dom.length() * static_cast<Real>(i) / kSamples;
    const Vector4 p = phi.value(t);
    if (std::abs(p.norm() - 1.0) > tol_sphere) {
      std::ostringstream os;
      os << "profile '" << phi.label << "' leaves the unit sphere at t=" << t
         << " (| |phi| - 1 | = " << std::abs(p.norm() - 1.0) << ")";
      throw RecipeError(os.str());
    }
    if (std::abs(p(0)) > 1e-8) {
      std::ostringstream os;
      os << "profile '" << phi.label
         << "' leaves the x2x3x4-hyperplane at t=" << t
         << " (first component " << p(0) << ")";
      throw RecipeError(os.str());
    }
    const Real speed = phi.deriv(t).norm();
    if (std::abs(speed - 1.0) > tol_speed) {
      std::ostringstream os;
      os << "profile '" << phi.label << "' is not unit-speed at t=" << t
         << " (speed " << speed << "); reparametrize it first";
      throw RecipeError(os.str());
    }
  }
}

Vector4 derive_circle_axis(const SphereCurve& phi) {
  constexpr int kSamples = 9;
  const Interval dom = phi.curve.domain;
  // Sample a bounded window; circles are periodic so any window works.
  const Real width = std::min(dom.length(), Real(3.0));
  const Real start = dom.lo;

  Vector4 axis = Vector4::Zero();
  Real height = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const Real t = start + width * static_cast<Real>(i) / kSamples;
    const Vector4 cross = hyper_cross(phi.deriv(t), phi.second(t));
    const Real n = cross.norm();
    if (!(n > 1e-8)) {
      throw RecipeError("profile '" + phi.label +
                        "' has vanishing curvature; not a circle");
    }
    const Vector4 w = cross / n;
    const Real z = phi.value(t).dot(w);
    if (i == 0) {
      axis = w;
      height = z;
    } else if ((w - axis).norm() > 1e-6 || std::abs(z - height) > 1e-6) {
      throw RecipeError("profile '" + phi.label +
                        "' has a drifting axis; not a circle");
    }
  }
  return axis;
}

}  // namespace cpd4
