#include "cpd4/cpd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpd4/errors.hpp"
#include "cpd4/numerics.hpp"

namespace cpd4 {

namespace {

constexpr Real kChartTol = 1e-6;
constexpr Real kHalfPi = 1.5707963267948966;

std::vector<Real> uniform_nodes(const Interval& dom, int n, Real margin) {
  const Interval inner = dom.inset(margin * dom.length());
  std::vector<Real> nodes(n);
  for (int i = 0; i < n; ++i) {
    const Real f = n == 1 ? 0.5 : static_cast<Real>(i) / (n - 1);
    nodes[i] = inner.lo + f * inner.length();
  }
  return nodes;
}

Real theta_at(const SurfacePatch& surface, const CpdContext& ctx, Real s,
              Real t) {
  return decompose_direction(jet(surface, s, t), ctx).theta;
}

void require_chart(const Jet2& j, const FirstFundamentalForm& ff) {
  if (std::abs(ff.E - 1.0) > kChartTol || std::abs(ff.F) > kChartTol) {
    throw ChartError("metric is not in the adapted chart (E=1, F=0) at (s,t)=(" +
                     std::to_string(j.s) + ", " + std::to_string(j.t) +
                     "): E=" + std::to_string(ff.E) +
                     ", F=" + std::to_string(ff.F));
  }
}

}  // namespace

std::vector<Real> GridSpec::s_nodes(const SurfacePatch& surface) const {
  return uniform_nodes(surface.s_domain, ns, margin);
}

std::vector<Real> GridSpec::t_nodes(const SurfacePatch& surface) const {
  return uniform_nodes(surface.t_domain, nt, margin);
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Cpd:
      return "yes";
    case Verdict::NotCpd:
      return "no";
    default:
      return "inconclusive";
  }
}

AdaptedFrame decompose_direction(const Jet2& j, const CpdContext& ctx) {
  const FirstFundamentalForm ff = first_fundamental_form(j);
  const Vector4 k = ctx.k.normalized();

  Matrix2 gram;
  gram << ff.E, ff.F, ff.F, ff.G;
  const Vector2 rhs(k.dot(j.xs), k.dot(j.xt));
  const Vector2 ab = gram.ldlt().solve(rhs);
  const Vector4 k_tan = ab(0) * j.xs + ab(1) * j.xt;
  const Vector4 k_nor = k - k_tan;
  const Real norm_tan = k_tan.norm();
  const Real norm_nor = k_nor.norm();
  const Real theta = std::atan2(norm_nor, norm_tan);

  if (theta <= ctx.theta_band) {
    throw DegenerateDirectionError(
        DegenerateDirectionError::Kind::ThetaNearZero, theta);
  }
  if (theta >= kHalfPi - ctx.theta_band) {
    throw DegenerateDirectionError(
        DegenerateDirectionError::Kind::ThetaNearHalfPi, theta);
  }

  AdaptedFrame f;
  f.theta = theta;
  f.e1 = k_tan / norm_tan;
  f.e3 = k_nor / norm_nor;

  Vector4 e2 = j.xt - j.xt.dot(f.e1) * f.e1;
  if (e2.norm() < 1e-12 * std::max(Real(1), j.xt.norm())) {
    e2 = j.xs - j.xs.dot(f.e1) * f.e1;
  }
  const Real n2 = e2.norm();
  if (!(n2 > 1e-12)) {
    throw RegularityError("tangent plane collapsed while building e2");
  }
  f.e2 = e2 / n2;
  const Real orient = f.e2.dot(j.xt);
  if (orient < 0) {
    f.e2 = -f.e2;
  } else if (orient == 0 && f.e2.dot(j.xs) < 0) {
    f.e2 = -f.e2;
  }

  Vector4 e4 = complete_orthonormal(f.e1, f.e2, f.e3);
  const Real sign_ref = j.xtt.dot(e4);
  if (std::abs(sign_ref) > 1e-10) {
    if (sign_ref < 0) e4 = -e4;
  } else {
    e4 = canonical_sign(e4);
  }
  f.e4 = e4;
  return f;
}

CpdReport verify_cpd(const SurfacePatch& surface, const CpdContext& ctx,
                     const GridSpec& grid) {
  CpdReport report;
  report.s_values = grid.s_nodes(surface);
  report.t_values = grid.t_nodes(surface);
  report.ns = static_cast<int>(report.s_values.size());
  report.nt = static_cast<int>(report.t_values.size());
  report.points.reserve(static_cast<size_t>(report.ns) * report.nt);

  const Real nan = std::numeric_limits<Real>::quiet_NaN();

  for (const Real s : report.s_values) {
    for (const Real t : report.t_values) {
      CpdPointRecord rec;
      rec.s = s;
      rec.t = t;
      try {
        const Jet2 j = jet(surface, s, t);
        const AdaptedFrame f = decompose_direction(j, ctx);
        const FirstFundamentalForm ff = first_fundamental_form(j);
        const SecondFundamentalData sfd =
            second_fundamental(j, f.e1, f.e2, f.e3, f.e4, ff);
        rec.theta = f.theta;
        rec.h3_11 = sfd.h3_11;
        rec.h3_12 = sfd.h3_12;
        rec.h3_22 = sfd.h3_22;
        rec.h4_11 = sfd.h4_11;
        rec.h4_12 = sfd.h4_12;
        rec.h4_22 = sfd.h4_22;

        // e1(theta) as a directional derivative through the chart.
        try {
          const Vector2 c1 = tangent_coordinates(j, ff, f.e1);
          const Real hs = fd_step_1(s), ht = fd_step_1(t);
          const Real th_s = (theta_at(surface, ctx, s + hs, t) -
                             theta_at(surface, ctx, s - hs, t)) /
                            (2.0 * hs);
          const Real th_t = (theta_at(surface, ctx, s, t + ht) -
                             theta_at(surface, ctx, s, t - ht)) /
                            (2.0 * ht);
          rec.e1_theta = c1(0) * th_s + c1(1) * th_t;
        } catch (const Error&) {
          rec.e1_theta = nan;
        }
      } catch (const DegenerateDirectionError&) {
        rec.excluded = true;
        rec.theta = nan;
        ++report.excluded;
      } catch (const RegularityError&) {
        rec.excluded = true;
        rec.theta = nan;
        ++report.excluded;
      }
      report.points.push_back(rec);
    }
  }

  for (const CpdPointRecord& rec : report.points) {
    if (rec.excluded) continue;
    report.max_h3_12 = std::max(report.max_h3_12, std::abs(rec.h3_12));
    report.max_h4_12 = std::max(report.max_h4_12, std::abs(rec.h4_12));
    report.max_h4_11 = std::max(report.max_h4_11, std::abs(rec.h4_11));
    if (std::isfinite(rec.e1_theta)) {
      report.max_h3_11_plus_e1theta = std::max(
          report.max_h3_11_plus_e1theta, std::abs(rec.h3_11 + rec.e1_theta));
    }
  }

  const int total = report.ns * report.nt;
  if (total == 0 || report.excluded * 5 > total) {
    report.verdict = Verdict::Inconclusive;
  } else if (report.max_offdiag() < ctx.eigen_align_tol) {
    report.verdict = Verdict::Cpd;
  } else {
    report.verdict = Verdict::NotCpd;
  }
  return report;
}

StructureResiduals structure_residuals(const SurfacePatch& surface,
                                       const CpdContext& ctx, Real s, Real t,
                                       Real step) {
  const Real hs = step > 0 ? step : fd_step_1(s);
  const Real ht = step > 0 ? step : fd_step_1(t);

  const Jet2 jc = jet(surface, s, t);
  const FirstFundamentalForm ffc = first_fundamental_form(jc);
  require_chart(jc, ffc);
  const AdaptedFrame fc = decompose_direction(jc, ctx);
  const SecondFundamentalData center =
      second_fundamental(jc, fc.e1, fc.e2, fc.e3, fc.e4, ffc);
  const Real m_center = std::sqrt(ffc.G);

  struct Sample {
    Real theta, h3_22, h4_22, m;
  };
  // Stencil frames are gauge-aligned with the center frame so that finite
  // differences of the h coefficients are well defined.
  auto sample = [&](Real ss, Real tt) -> Sample {
    const Jet2 j = jet(surface, ss, tt);
    const FirstFundamentalForm ff = first_fundamental_form(j);
    require_chart(j, ff);
    AdaptedFrame f = decompose_direction(j, ctx);
    if (f.e2.dot(fc.e2) < 0) f.e2 = -f.e2;
    if (f.e4.dot(fc.e4) < 0) f.e4 = -f.e4;
    const SecondFundamentalData sfd =
        second_fundamental(j, f.e1, f.e2, f.e3, f.e4, ff);
    return Sample{f.theta, sfd.h3_22, sfd.h4_22, std::sqrt(ff.G)};
  };

  const Sample sp = sample(s + hs, t);
  const Sample sm = sample(s - hs, t);
  const Sample tp = sample(s, t + ht);
  const Sample tm = sample(s, t - ht);

  const Real e1_h3_22 = (sp.h3_22 - sm.h3_22) / (2.0 * hs);
  const Real e1_h4_22 = (sp.h4_22 - sm.h4_22) / (2.0 * hs);
  const Real m_s = (sp.m - sm.m) / (2.0 * hs);
  const Real theta_t = (tp.theta - tm.theta) / (2.0 * ht);
  const Real tan_theta = std::tan(fc.theta);

  StructureResiduals r;
  r.theta = fc.theta;
  r.m = m_center;
  r.center = center;
  r.r_codazzi_a = e1_h3_22 - tan_theta * center.h3_22 *
                                 (center.h3_11 - center.h3_22);
  r.r_codazzi_b = e1_h4_22 + tan_theta * center.h3_22 * center.h4_22;
  r.r_theta = theta_t / m_center;
  r.r_m = m_s - m_center * tan_theta * center.h3_22;
  return r;
}

ThetaField theta_field(const SurfacePatch& surface, const CpdContext& ctx,
                       const GridSpec& grid) {
  ThetaField field;
  field.s_values = grid.s_nodes(surface);
  field.t_values = grid.t_nodes(surface);
  field.ns = static_cast<int>(field.s_values.size());
  field.nt = static_cast<int>(field.t_values.size());
  field.theta.assign(static_cast<size_t>(field.ns) * field.nt,
                     std::numeric_limits<Real>::quiet_NaN());

  for (int i = 0; i < field.ns; ++i) {
    for (int j = 0; j < field.nt; ++j) {
      try {
        field.theta[static_cast<size_t>(i) * field.nt + j] =
            theta_at(surface, ctx, field.s_values[i], field.t_values[j]);
      } catch (const DegenerateDirectionError&) {
        ++field.excluded;
      } catch (const RegularityError&) {
        ++field.excluded;
      }
    }
  }

  auto value = [&](int i, int j) {
    return field.theta[static_cast<size_t>(i) * field.nt + j];
  };
  if (field.nt >= 3) {
    const Real dt = field.t_values[1] - field.t_values[0];
    for (int i = 0; i < field.ns; ++i) {
      for (int j = 1; j + 1 < field.nt; ++j) {
        const Real d = (value(i, j + 1) - value(i, j - 1)) / (2.0 * dt);
        if (std::isfinite(d)) {
          field.max_dtheta_dt = std::max(field.max_dtheta_dt, std::abs(d));
        }
      }
    }
  }
  if (field.ns >= 3) {
    const Real ds = field.s_values[1] - field.s_values[0];
    for (int j = 0; j < field.nt; ++j) {
      for (int i = 1; i + 1 < field.ns; ++i) {
        const Real d = (value(i + 1, j) - value(i - 1, j)) / (2.0 * ds);
        if (std::isfinite(d)) {
          field.max_dtheta_ds = std::max(field.max_dtheta_ds, std::abs(d));
        }
      }
    }
  }
  return field;
}

Real eigenvector_misalignment(const Sym2& S) {
  const auto pairs = sym2_eigen(S);
  Real best = kHalfPi;
  for (const auto& p : pairs) {
    const Real c = std::clamp(std::abs(p.vector(0)), Real(0), Real(1));
    best = std::min(best, std::acos(c));
  }
  return best;
}

Analysis analyze(const SurfacePatch& surface, const CpdContext& ctx,
                 const GridSpec& grid) {
  Analysis a;
  a.cpd = verify_cpd(surface, ctx, grid);
  a.theta = theta_field(surface, ctx, grid);

  GridSpec coarse;
  coarse.ns = std::min(grid.ns, 8);
  coarse.nt = std::min(grid.nt, 8);
  coarse.margin = std::max(grid.margin, Real(0.05));

  Real max_a = 0, max_b = 0, max_t = 0, max_m = 0;
  for (const Real s : coarse.s_nodes(surface)) {
    for (const Real t : coarse.t_nodes(surface)) {
      try {
        const StructureResiduals r = structure_residuals(surface, ctx, s, t);
        max_a = std::max(max_a, std::abs(r.r_codazzi_a));
        max_b = std::max(max_b, std::abs(r.r_codazzi_b));
        max_t = std::max(max_t, std::abs(r.r_theta));
        max_m = std::max(max_m, std::abs(r.r_m));
        ++a.residual_samples;
      } catch (const ChartError&) {
        ++a.chart_violations;
      } catch (const Error&) {
        // Degenerate or irregular sample points are already reflected in the
        // grid exclusions; skip them here.
      }
    }
  }
  if (a.residual_samples > 0) {
    a.max_codazzi_a = max_a;
    a.max_codazzi_b = max_b;
    a.max_theta_eq = max_t;
    a.max_m_eq = max_m;
  }
  return a;
}

}  // namespace cpd4
