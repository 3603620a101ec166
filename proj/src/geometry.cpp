#include "cpd4/geometry.hpp"

#include <cmath>
#include <sstream>

#include "cpd4/errors.hpp"

namespace cpd4 {

namespace {

constexpr Real kRegularityThreshold = 1e-10;
constexpr Real kFrameGramTol = 1e-8;
constexpr Real kTangencyTol = 1e-6;
constexpr Real kChartTol = 1e-6;

}  // namespace

Vector2 tangent_coordinates(const Jet2& j, const FirstFundamentalForm& ff,
                            const Vector4& v) {
  Matrix2 gram;
  gram << ff.E, ff.F, ff.F, ff.G;
  Vector2 rhs(v.dot(j.xs), v.dot(j.xt));
  Vector2 ab = gram.ldlt().solve(rhs);
  const Vector4 reconstructed = ab(0) * j.xs + ab(1) * j.xt;
  if ((reconstructed - v).norm() > kTangencyTol * std::max(Real(1), v.norm())) {
    throw FrameError(
        "frame vector is not in the tangent plane of the jet (residual " +
        std::to_string((reconstructed - v).norm()) + ")");
  }
  return ab;
}

FirstFundamentalForm first_fundamental_form(const Jet2& j) {
  FirstFundamentalForm ff;
  ff.E = j.xs.dot(j.xs);
  ff.F = j.xs.dot(j.xt);
  ff.G = j.xt.dot(j.xt);
  if (!(ff.det() > kRegularityThreshold)) {
    std::ostringstream os;
    os << "degenerate metric at (s,t)=(" << j.s << ", " << j.t
       << "): EG - F^2 = " << ff.det() << " <= " << kRegularityThreshold;
    throw RegularityError(os.str());
  }
  return ff;
}

std::pair<Vector4, Vector4> normal_basis(const Jet2& j) {
  return orthonormal_complement(j.xs, j.xt);
}

SecondFundamentalData second_fundamental(const Jet2& j, const Vector4& e1,
                                         const Vector4& e2, const Vector4& e3,
                                         const Vector4& e4,
                                         const FirstFundamentalForm& ff) {
  Eigen::Matrix<Real, 4, 4> frame;
  frame.col(0) = e1;
  frame.col(1) = e2;
  frame.col(2) = e3;
  frame.col(3) = e4;
  const Real gram_dev =
      (frame.transpose() * frame - Eigen::Matrix<Real, 4, 4>::Identity())
          .cwiseAbs()
          .maxCoeff();
  if (gram_dev > kFrameGramTol) {
    throw FrameError("frame is not orthonormal (Gram deviation " +
                     std::to_string(gram_dev) + ")");
  }

  const Vector2 c1 = tangent_coordinates(j, ff, e1);
  const Vector2 c2 = tangent_coordinates(j, ff, e2);

  // Second-derivative bilinear form in frame coordinates.
  auto d2x = [&](const Vector2& u, const Vector2& v) {
    return Vector4(u(0) * v(0) * j.xss + (u(0) * v(1) + u(1) * v(0)) * j.xst +
                   u(1) * v(1) * j.xtt);
  };
  const Vector4 d11 = d2x(c1, c1);
  const Vector4 d12 = d2x(c1, c2);
  const Vector4 d22 = d2x(c2, c2);

  SecondFundamentalData sfd;
  sfd.e1 = e1;
  sfd.e2 = e2;
  sfd.e3 = e3;
  sfd.e4 = e4;
  sfd.h3_11 = d11.dot(e3);
  sfd.h3_12 = d12.dot(e3);
  sfd.h3_22 = d22.dot(e3);
  sfd.h4_11 = d11.dot(e4);
  sfd.h4_12 = d12.dot(e4);
  sfd.h4_22 = d22.dot(e4);
  sfd.S3 = Sym2{sfd.h3_11, sfd.h3_12, sfd.h3_22};
  sfd.S4 = Sym2{sfd.h4_11, sfd.h4_12, sfd.h4_22};
  return sfd;
}

Vector4 mean_curvature(const SecondFundamentalData& sfd) {
  return 0.5 * ((sfd.h3_11 + sfd.h3_22) * sfd.e3 +
                (sfd.h4_11 + sfd.h4_22) * sfd.e4);
}

Real gauss_curvature_extrinsic(const SecondFundamentalData& sfd) {
  return (sfd.h3_11 * sfd.h3_22 - sfd.h3_12 * sfd.h3_12) +
         (sfd.h4_11 * sfd.h4_22 - sfd.h4_12 * sfd.h4_12);
}

Real gauss_curvature_intrinsic(const SurfacePatch& surface, Real s, Real t,
                               Real step) {
  const Real h = step > 0 ? step : fd_step_2(s);
  Real m[3];
  const Real offsets[3] = {-h, 0.0, h};
  for (int i = 0; i < 3; ++i) {
    const Jet2 j = jet(surface, s + offsets[i], t);
    const FirstFundamentalForm ff = first_fundamental_form(j);
    if (std::abs(ff.E - 1.0) > kChartTol || std::abs(ff.F) > kChartTol) {
      std::ostringstream os;
      os << "metric is not in the adapted chart (E=1, F=0) at (s,t)=("
         << s + offsets[i] << ", " << t << "): E=" << ff.E << ", F=" << ff.F;
      throw ChartError(os.str());
    }
    m[i] = std::sqrt(ff.G);
  }
  const Real m_ss = (m[2] - 2.0 * m[1] + m[0]) / (h * h);
  return -m_ss / m[1];
}

Real normal_commutator(const SecondFundamentalData& sfd) {
  const Matrix2 a = sfd.S3.matrix();
  const Matrix2 b = sfd.S4.matrix();
  return (a * b - b * a).norm();
}

InvariantReport invariant_report(const SurfacePatch& surface, Real s, Real t) {
  const Jet2 j = jet(surface, s, t);
  const FirstFundamentalForm ff = first_fundamental_form(j);
  const auto [n1, n2] = normal_basis(j);
  const Vector4 e1 = j.xs / std::sqrt(ff.E);
  Vector4 e2 = j.xt - (ff.F / ff.E) * j.xs;
  e2.normalize();
  const SecondFundamentalData sfd = second_fundamental(j, e1, e2, n1, n2, ff);

  InvariantReport report;
  report.s = s;
  report.t = t;
  report.H = mean_curvature(sfd);
  report.K = gauss_curvature_extrinsic(sfd);
  report.commutator_norm = normal_commutator(sfd);
  try {
    report.K_intrinsic = gauss_curvature_intrinsic(surface, s, t);
  } catch (const ChartError&) {
    report.K_intrinsic.reset();
  } catch (const DomainError&) {
    report.K_intrinsic.reset();
  }
  return report;
}

}  // namespace cpd4
