#include "cpd4/generators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "cpd4/errors.hpp"
#include "cpd4/numerics.hpp"

namespace cpd4 {

namespace {

constexpr Real kThetaBand = 1e-4;
constexpr Real kHalfPi = 1.5707963267948966;
constexpr int kTableCells = 2048;
constexpr int kValidationSamples = 256;

[[noreturn]] void recipe_fail(const std::string& msg) {
  throw RecipeError(msg);
}

// Interval that the tabulated integrals must cover: the hull of the anchor
// and the used range, padded as far as the profile's own domain allows.
Interval table_domain(const Interval& fn_dom, Real anchor, const Interval& used,
                      const char* what) {
  const Real lo = std::min(anchor, used.lo);
  const Real hi = std::max(anchor, used.hi);
  if (lo < fn_dom.lo - 1e-12 || hi > fn_dom.hi + 1e-12) {
    std::ostringstream os;
    os << what << " domain [" << fn_dom.lo << ", " << fn_dom.hi
       << "] does not cover the required range [" << lo << ", " << hi << "]";
    recipe_fail(os.str());
  }
  const Real pad_lo = std::min(Real(0.05), lo - fn_dom.lo);
  const Real pad_hi = std::min(Real(0.05), fn_dom.hi - hi);
  return Interval{lo - std::max(pad_lo, Real(0)), hi + std::max(pad_hi, Real(0))};
}

struct Prepared {
  Interval s_dom, t_dom;
  Real theta0 = std::numeric_limits<Real>::quiet_NaN();  // C-* only
  SmoothFunction1D theta;
  SmoothFunction1D psi;  // type 1 (defaults to constant 0)
  SphereCurve phi;
  // Tables (shared so the jet closures can hold them cheaply).
  std::shared_ptr<const CumulativeIntegral> A = nullptr, B = nullptr;  // NC-*
  std::array<std::shared_ptr<const CumulativeIntegral>, 3> gamma_tab{};  // type 1
  Real gamma_scale = 1.0;  // 1 (NC-1) or sin(theta0) (C-1)
  // Circle data (type 2).
  Vector4 axis = Vector4::Zero();
  Real circle_radius = std::numeric_limits<Real>::quiet_NaN();
  Real circle_height = std::numeric_limits<Real>::quiet_NaN();
  Real rho_eff = std::numeric_limits<Real>::quiet_NaN();
};

Prepared prepare(const GeneratorRecipe& recipe) {
  Prepared p{.s_dom = recipe.s_domain.value_or(
                 Interval{recipe.s0 + 0.05, recipe.s0 + 1.2}),
             .t_dom = Interval{0, 1},
             .theta = recipe.theta,
             .psi = recipe.psi.value_or(
                 SmoothFunction1D::constant(0.0, Interval{-1e6, 1e6})),
             .phi = recipe.phi};

  if (!(p.s_dom.length() > 1e-6)) {
    recipe_fail("s-domain is empty or too short");
  }

  // Resolve the t-domain against the profile curve's own domain.
  const Interval phi_dom = p.phi.curve.domain;
  const Interval allowed{phi_dom.lo + 0.05, phi_dom.hi - 0.05};
  if (recipe.t_domain) {
    p.t_dom = *recipe.t_domain;
  } else {
    if (!allowed.contains(recipe.t0, 0.0)) {
      std::ostringstream os;
      os << "anchor t0=" << recipe.t0
         << " is outside the usable profile-curve range [" << allowed.lo
         << ", " << allowed.hi << "]";
      recipe_fail(os.str());
    }
    p.t_dom = Interval{recipe.t0, std::min(recipe.t0 + 2.8, allowed.hi)};
  }
  if (!(p.t_dom.length() > 1e-6)) {
    recipe_fail("t-domain is empty or too short");
  }
  if (p.t_dom.lo < phi_dom.lo - 1e-12 || p.t_dom.hi > phi_dom.hi + 1e-12) {
    std::ostringstream os;
    os << "t-domain [" << p.t_dom.lo << ", " << p.t_dom.hi
       << "] exceeds the profile-curve domain [" << phi_dom.lo << ", "
       << phi_dom.hi << "]";
    recipe_fail(os.str());
  }

  validate_sphere_curve(p.phi);

  // Angle profile checks on the s-domain.
  const bool constant_angle = is_constant_angle(recipe.family);
  {
    const Interval th_dom = p.theta.domain();
    if (p.s_dom.lo < th_dom.lo - 1e-12 || p.s_dom.hi > th_dom.hi + 1e-12) {
      recipe_fail("angle profile domain does not cover the s-domain");
    }
  }
  Real theta_min = 1e9, theta_max = -1e9, max_dtheta = 0.0;
  for (int i = 0; i <= kValidationSamples; ++i) {
    const Real s =
        p.s_dom.lo + p.s_dom.length() * static_cast<Real>(i) / kValidationSamples;
    const Real th = p.theta(s);
    theta_min = std::min(theta_min, th);
    theta_max = std::max(theta_max, th);
    max_dtheta = std::max(max_dtheta, std::abs(p.theta.derivative(s)));
  }
  if (!(theta_min > kThetaBand) || !(theta_max < kHalfPi - kThetaBand)) {
    std::ostringstream os;
    os << "angle profile leaves the admissible band (" << kThetaBand << ", "
       << kHalfPi - kThetaBand << ") on the s-domain: range [" << theta_min
       << ", " << theta_max << "]";
    recipe_fail(os.str());
  }
  if (constant_angle) {
    if (theta_max - theta_min > 1e-12) {
      recipe_fail(
          "constant-angle family given a non-constant angle profile; use the "
          "NC families instead");
    }
    p.theta0 = 0.5 * (theta_min + theta_max);
  } else if (!(max_dtheta > 1e-8)) {
    recipe_fail(
        "non-constant-angle family given a (numerically) constant angle "
        "profile; use the C families instead");
  }

  const bool type1 = is_type1(recipe.family);
  if (!type1 && recipe.psi.has_value()) {
    recipe_fail("psi profile plays no role in the type-2 families");
  }

  if (!constant_angle) {
    // Cumulative integrals of cos(theta) and sin(theta) from s0.
    const Interval tab =
        table_domain(p.theta.domain(), recipe.s0, p.s_dom, "angle profile");
    const SmoothFunction1D theta_copy = p.theta;
    p.A = std::make_shared<const CumulativeIntegral>(
        std::function<Real(Real)>(
            [theta_copy](Real s) { return std::cos(theta_copy(s)); }),
        recipe.s0, tab, kTableCells);
    p.B = std::make_shared<const CumulativeIntegral>(
        std::function<Real(Real)>(
            [theta_copy](Real s) { return std::sin(theta_copy(s)); }),
        recipe.s0, tab, kTableCells);
  }

  if (type1) {
    const Interval psi_req = table_domain(p.psi.domain(), recipe.t0, p.t_dom,
                                          "psi profile");
    p.gamma_scale =
        constant_angle ? std::sin(p.theta0) : 1.0;
    const SmoothFunction1D psi_copy = p.psi;
    const SphereCurve phi_copy = p.phi;
    const Real scale = p.gamma_scale;
    for (int comp = 1; comp < 4; ++comp) {
      p.gamma_tab[comp - 1] = std::make_shared<const CumulativeIntegral>(
          std::function<Real(Real)>([psi_copy, phi_copy, scale, comp](Real t) {
            return scale * psi_copy(t) * phi_copy.deriv(t)(comp);
          }),
          recipe.t0, psi_req, kTableCells);
    }
  } else {
    // Type 2 needs a circle profile.
    if (!(recipe.rho > 1e-6)) {
      recipe_fail("circle scale rho must be positive");
    }
    if (p.phi.circle_axis) {
      p.axis = *p.phi.circle_axis;
      p.circle_radius = p.phi.circle_radius.value_or(
          std::numeric_limits<Real>::quiet_NaN());
      p.circle_height = p.phi.circle_height.value_or(
          std::numeric_limits<Real>::quiet_NaN());
    } else {
      p.axis = derive_circle_axis(p.phi);
    }
    if (!std::isfinite(p.circle_height)) {
      p.circle_height = p.phi.value(p.t_dom.midpoint()).dot(p.axis);
    }
    if (!std::isfinite(p.circle_radius)) {
      const Vector4 rad =
          p.phi.value(p.t_dom.midpoint()) - p.circle_height * p.axis;
      p.circle_radius = rad.norm();
    }
    if (!(p.circle_radius > 1e-6)) {
      recipe_fail("profile circle radius is (numerically) zero");
    }
    p.rho_eff = recipe.rho * p.circle_radius;
  }
  return p;
}

// Positivity check of the closed-form m over the resolved domain.
void check_m_positive(const std::function<Real(Real, Real)>& m,
                      const Interval& s_dom, const Interval& t_dom) {
  constexpr int kN = 32;
  Real m_min = 1e9;
  Real at_s = 0, at_t = 0;
  for (int i = 0; i <= kN; ++i) {
    for (int j = 0; j <= kN; ++j) {
      const Real s = s_dom.lo + s_dom.length() * static_cast<Real>(i) / kN;
      const Real t = t_dom.lo + t_dom.length() * static_cast<Real>(j) / kN;
      const Real v = m(s, t);
      if (v < m_min) {
        m_min = v;
        at_s = s;
        at_t = t;
      }
    }
  }
  if (!(m_min > 1e-6)) {
    std::ostringstream os;
    os << "metric coefficient m = sqrt(G) is not positive on the domain: m="
       << m_min << " at (s,t)=(" << at_s << ", " << at_t
       << "); shrink the domain or adjust psi";
    recipe_fail(os.str());
  }
}

}  // namespace

const char* family_name(Family f) {
  switch (f) {
    case Family::NC1:
      return "NC-1";
    case Family::NC2:
      return "NC-2";
    case Family::C1:
      return "C-1";
    default:
      return "C-2";
  }
}

std::optional<Family> family_from_name(const std::string& name) {
  if (name == "NC-1" || name == "nc-1") return Family::NC1;
  if (name == "NC-2" || name == "nc-2") return Family::NC2;
  if (name == "C-1" || name == "c-1") return Family::C1;
  if (name == "C-2" || name == "c-2") return Family::C2;
  return std::nullopt;
}

bool is_type1(Family f) { return f == Family::NC1 || f == Family::C1; }

bool is_constant_angle(Family f) { return f == Family::C1 || f == Family::C2; }

SurfacePatch generate(const GeneratorRecipe& recipe) {
  const Prepared p = prepare(recipe);

  auto info = std::make_shared<GeneratedInfo>();
  info->family = recipe.family;
  info->family_label = family_name(recipe.family);
  info->s0 = recipe.s0;
  info->t0 = recipe.t0;
  info->phi = p.phi;

  const SmoothFunction1D theta_fn = p.theta;
  info->theta = [theta_fn](Real s) { return theta_fn(s); };
  info->dtheta = [theta_fn](Real s) { return theta_fn.derivative(s); };

  if (is_type1(recipe.family)) {
    const SmoothFunction1D psi_fn = p.psi;
    info->psi = [psi_fn](Real t) { return psi_fn(t); };
    info->dpsi = [psi_fn](Real t) { return psi_fn.derivative(t); };
    auto g1 = p.gamma_tab[0], g2 = p.gamma_tab[1], g3 = p.gamma_tab[2];
    info->gamma = [g1, g2, g3](Real t) {
      return Vector4(0.0, g1->value(t), g2->value(t), g3->value(t));
    };
  }
  if (p.phi.circle_axis || !is_type1(recipe.family)) {
    if (!is_type1(recipe.family)) {
      info->circle_axis = p.axis;
      info->circle_radius = p.circle_radius;
      info->circle_height = p.circle_height;
      info->kappa_g = p.circle_height / p.circle_radius;
    } else if (p.phi.circle_axis) {
      info->circle_axis = p.phi.circle_axis;
      info->circle_radius = p.phi.circle_radius;
      info->circle_height = p.phi.circle_height;
      info->kappa_g = p.phi.geodesic_curvature();
    }
  }

  SurfacePatch patch;
  patch.s_domain = p.s_dom;
  patch.t_domain = p.t_dom;
  patch.generated = info;

  std::ostringstream label;
  if (!recipe.label.empty()) {
    label << recipe.label;
  } else {
    label << family_name(recipe.family) << "(phi=" << p.phi.label << ")";
  }
  patch.label = label.str();

  switch (recipe.family) {
    case Family::NC1: {
      auto A = p.A, B = p.B;
      auto g1 = p.gamma_tab[0], g2 = p.gamma_tab[1], g3 = p.gamma_tab[2];
      const SphereCurve phi = p.phi;
      const SmoothFunction1D theta = p.theta;
      const SmoothFunction1D psi = p.psi;

      info->A = [A](Real s) { return A->value(s); };
      info->B = [B](Real s) { return B->value(s); };
      info->m = [B, psi](Real s, Real t) { return B->value(s) + psi(t); };
      info->m_s = [theta](Real s, Real) { return std::sin(theta(s)); };

      patch.position = [A, B, g1, g2, g3, phi](Real s, Real t) {
        const Vector4 ph = phi.value(t);
        Vector4 x = B->value(s) * ph;
        x(0) += A->value(s);
        x(1) += g1->value(t);
        x(2) += g2->value(t);
        x(3) += g3->value(t);
        return x;
      };
      patch.analytic_jet = [A, B, g1, g2, g3, phi, theta, psi](Real s, Real t) {
        const Real th = theta(s);
        const Real dth = theta.derivative(s);
        const Real c = std::cos(th), sn = std::sin(th);
        const Vector4 ph = phi.value(t);
        const Vector4 dph = phi.deriv(t);
        const Vector4 ddph = phi.second(t);
        const Real Bs = B->value(s);
        const Real ps = psi(t), dps = psi.derivative(t);
        const Real m = Bs + ps;

        Jet2 j;
        j.x = Bs * ph;
        j.x(0) += A->value(s);
        j.x(1) += g1->value(t);
        j.x(2) += g2->value(t);
        j.x(3) += g3->value(t);
        j.xs = sn * ph;
        j.xs(0) += c;
        j.xss = dth * (c * ph);
        j.xss(0) += dth * (-sn);
        j.xt = m * dph;
        j.xst = sn * dph;
        j.xtt = m * ddph + dps * dph;
        return j;
      };
      break;
    }
    case Family::NC2: {
      auto A = p.A, B = p.B;
      const SphereCurve phi = p.phi;
      const SmoothFunction1D theta = p.theta;
      const Vector4 axis = p.axis;
      const Real rho = recipe.rho;

      info->rho = rho;
      info->rho_eff = p.rho_eff;
      info->A = [A](Real s) { return A->value(s); };
      info->B = [B](Real s) { return B->value(s); };
      info->m = [rho](Real, Real) { return rho; };
      info->m_s = [](Real, Real) { return 0.0; };

      patch.position = [A, B, axis, rho, phi](Real s, Real t) {
        Vector4 x = B->value(s) * axis + rho * phi.value(t);
        x(0) += A->value(s);
        return x;
      };
      patch.analytic_jet = [A, B, axis, rho, phi, theta](Real s, Real t) {
        const Real th = theta(s);
        const Real dth = theta.derivative(s);
        const Real c = std::cos(th), sn = std::sin(th);

        Jet2 j;
        j.x = B->value(s) * axis + rho * phi.value(t);
        j.x(0) += A->value(s);
        j.xs = sn * axis;
        j.xs(0) += c;
        j.xss = dth * c * axis;
        j.xss(0) += dth * (-sn);
        j.xt = rho * phi.deriv(t);
        j.xst = Vector4::Zero();
        j.xtt = rho * phi.second(t);
        return j;
      };
      break;
    }
    case Family::C1: {
      auto g1 = p.gamma_tab[0], g2 = p.gamma_tab[1], g3 = p.gamma_tab[2];
      const SphereCurve phi = p.phi;
      const SmoothFunction1D psi = p.psi;
      const Real th0 = p.theta0;
      const Real c0 = std::cos(th0), sn0 = std::sin(th0);

      info->theta0 = th0;
      info->m = [sn0, psi](Real s, Real t) { return sn0 * (s + psi(t)); };
      info->m_s = [sn0](Real, Real) { return sn0; };

      patch.position = [g1, g2, g3, phi, c0, sn0](Real s, Real t) {
        Vector4 x = (sn0 * s) * phi.value(t);
        x(0) += c0 * s;
        x(1) += g1->value(t);
        x(2) += g2->value(t);
        x(3) += g3->value(t);
        return x;
      };
      patch.analytic_jet = [g1, g2, g3, phi, psi, c0, sn0](Real s, Real t) {
        const Vector4 ph = phi.value(t);
        const Vector4 dph = phi.deriv(t);
        const Vector4 ddph = phi.second(t);
        const Real ps = psi(t), dps = psi.derivative(t);

        Jet2 j;
        j.x = (sn0 * s) * ph;
        j.x(0) += c0 * s;
        j.x(1) += g1->value(t);
        j.x(2) += g2->value(t);
        j.x(3) += g3->value(t);
        j.xs = sn0 * ph;
        j.xs(0) += c0;
        j.xss = Vector4::Zero();
        j.xt = sn0 * ((s + ps) * dph);
        j.xst = sn0 * dph;
        j.xtt = sn0 * ((s + ps) * ddph + dps * dph);
        return j;
      };
      break;
    }
    case Family::C2: {
      const SphereCurve phi = p.phi;
      const Vector4 axis = p.axis;
      const Real th0 = p.theta0;
      const Real c0 = std::cos(th0), sn0 = std::sin(th0);
      const Real rho = recipe.rho;

      info->theta0 = th0;
      info->rho = rho;
      info->rho_eff = p.rho_eff;
      info->m = [rho](Real, Real) { return rho; };
      info->m_s = [](Real, Real) { return 0.0; };

      patch.position = [axis, rho, phi, c0, sn0](Real s, Real t) {
        Vector4 x = (sn0 * s) * axis + rho * phi.value(t);
        x(0) += c0 * s;
        return x;
      };
      patch.analytic_jet = [axis, rho, phi, c0, sn0](Real s, Real t) {
        Jet2 j;
        j.x = (sn0 * s) * axis + rho * phi.value(t);
        j.x(0) += c0 * s;
        j.xs = sn0 * axis;
        j.xs(0) += c0;
        j.xss = Vector4::Zero();
        j.xt = rho * phi.deriv(t);
        j.xst = Vector4::Zero();
        j.xtt = rho * phi.second(t);
        return j;
      };
      break;
    }
  }

  check_m_positive(info->m, p.s_dom, p.t_dom);
  return patch;
}

Curve4 gamma_curve(const GeneratorRecipe& recipe) {
  if (!is_type1(recipe.family)) {
    recipe_fail("only the type-1 families carry a drift curve gamma");
  }
  const Prepared p = prepare(recipe);
  auto g1 = p.gamma_tab[0], g2 = p.gamma_tab[1], g3 = p.gamma_tab[2];
  const SphereCurve phi = p.phi;
  const SmoothFunction1D psi = p.psi;
  const Real scale = p.gamma_scale;

  Curve4 gamma;
  gamma.domain = g1->domain();
  gamma.position = [g1, g2, g3](Real t) {
    return Vector4(0.0, g1->value(t), g2->value(t), g3->value(t));
  };
  gamma.d1 = [phi, psi, scale](Real t) {
    return Vector4(scale * psi(t) * phi.deriv(t));
  };
  gamma.d2 = [phi, psi, scale](Real t) {
    return Vector4(scale * (psi.derivative(t) * phi.deriv(t) +
                            psi(t) * phi.second(t)));
  };
  return gamma;
}

}  // namespace cpd4
