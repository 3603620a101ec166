#include <cmath>
#include <random>

#include <doctest.h>

#include "cpd4/config.hpp"
#include "cpd4/cpd.hpp"
#include "cpd4/errors.hpp"
#include "cpd4/generators.hpp"
#include "test_support.hpp"

using namespace cpd4;
using namespace testsupport;

namespace {

const Real kPi = std::acos(Real(-1));

SurfacePatch tilted_plane() {
  const Real a = 0.7;
  SurfacePatch p;
  p.position = [a](Real s, Real t) {
    return Vector4(s * std::cos(a), s * std::sin(a), t, 0.0);
  };
  p.analytic_jet = [a](Real s, Real t) {
    Jet2 j;
    j.s = s;
    j.t = t;
    j.x = Vector4(s * std::cos(a), s * std::sin(a), t, 0.0);
    j.xs = Vector4(std::cos(a), std::sin(a), 0.0, 0.0);
    j.xt = Vector4(0.0, 0.0, 1.0, 0.0);
    return j;
  };
  p.s_domain = Interval{0.0, 1.0};
  p.t_domain = Interval{0.0, 1.0};
  p.label = "tilted-plane";
  return p;
}

}  // namespace

TEST_CASE("adapted frame decomposes the fixed direction") {
  const SurfacePatch surface = generate(nc1_basic());
  const CpdContext ctx;
  for (Real s : {0.4, 0.8, 1.1}) {
    for (Real t : {0.2, 1.5, 2.6}) {
      const Jet2 j = jet(surface, s, t);
      const AdaptedFrame fr = decompose_direction(j, ctx);

      // k = cos(theta) e1 + sin(theta) e3.
      const Vector4 rebuilt =
          std::cos(fr.theta) * fr.e1 + std::sin(fr.theta) * fr.e3;
      CHECK((rebuilt - ctx.k).norm() < 1e-10);

      // Orthonormal frame, e1/e2 tangent, e3/e4 normal.
      const Vector4 es[4] = {fr.e1, fr.e2, fr.e3, fr.e4};
      for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
          const Real want = a == b ? 1.0 : 0.0;
          CHECK(std::abs(es[a].dot(es[b]) - want) < 1e-10);
        }
      }
      CHECK(std::abs(fr.e1.dot(j.xs) * fr.e2.dot(j.xt) -
                     fr.e1.dot(j.xt) * fr.e2.dot(j.xs)) > 0.0);
      CHECK(std::abs(fr.e3.dot(j.xs)) < 1e-9);
      CHECK(std::abs(fr.e3.dot(j.xt)) < 1e-9);
      CHECK(fr.e2.dot(j.xt) > 0.0);  // orientation convention

      // theta(s,t) equals the recipe profile, independent of t.
      CHECK(std::abs(fr.theta - s) < 1e-8);
    }
  }
}

TEST_CASE("constant-angle family recovers theta0 everywhere") {
  const SurfacePatch surface = generate(c2_basic());
  const CpdContext ctx;
  for (Real s : {0.1, 0.6, 1.1}) {
    for (Real t : {0.3, 1.4, 2.5}) {
      const AdaptedFrame fr = decompose_direction(jet(surface, s, t), ctx);
      CHECK(std::abs(fr.theta - kPi / 4.0) < 1e-10);
    }
  }
}

TEST_CASE("degenerate directions are rejected with the documented errors") {
  const CpdContext ctx;

  SurfacePatch plane = builtin_surface("plane-degenerate");
  try {
    decompose_direction(jet(plane, 0.5, 0.5), ctx);
    FAIL("expected DegenerateDirectionError");
  } catch (const DegenerateDirectionError& e) {
    CHECK(e.kind == DegenerateDirectionError::Kind::ThetaNearZero);
    CHECK(doctest::String(e.what()) ==
          doctest::Contains("theta ~ 0"));
  }

  SurfacePatch normal_plane;
  normal_plane.position = [](Real s, Real t) {
    return Vector4(0.25, s, t, 0.0);
  };
  normal_plane.s_domain = Interval{0.0, 1.0};
  normal_plane.t_domain = Interval{0.0, 1.0};
  try {
    decompose_direction(jet(normal_plane, 0.5, 0.5), ctx);
    FAIL("expected DegenerateDirectionError");
  } catch (const DegenerateDirectionError& e) {
    CHECK(e.kind == DegenerateDirectionError::Kind::ThetaNearHalfPi);
    CHECK(doctest::String(e.what()) == doctest::Contains("pi/2"));
  }
}

TEST_CASE("verify_cpd accepts a generated family") {
  const CpdReport report = verify_cpd(generate(nc1_basic()), CpdContext{},
                                      GridSpec{});
  CHECK(report.verdict == Verdict::Cpd);
  CHECK(report.excluded == 0);
  CHECK(report.ns == 20);
  CHECK(report.nt == 20);
  CHECK(static_cast<int>(report.points.size()) == 400);
  CHECK(report.max_offdiag() < 1e-10);
  CHECK(report.max_h4_11 < 1e-10);
  CHECK(report.max_h3_11_plus_e1theta < 1e-6);
}

TEST_CASE("a plane tilted inside a 3-plane is trivially CPD") {
  const CpdReport report =
      verify_cpd(tilted_plane(), CpdContext{}, GridSpec{});
  CHECK(report.verdict == Verdict::Cpd);
  CHECK(report.max_offdiag() < 1e-12);
}

TEST_CASE("a generic graph surface is not CPD") {
  const CpdReport report = verify_cpd(builtin_surface("generic-graph"),
                                      CpdContext{}, GridSpec{});
  CHECK(report.verdict == Verdict::NotCpd);
  CHECK(report.excluded == 0);
  CHECK(report.max_offdiag() > 1e-2);
}

TEST_CASE("theta-degenerate surfaces give an inconclusive verdict") {
  const CpdReport report = verify_cpd(builtin_surface("plane-degenerate"),
                                      CpdContext{}, GridSpec{});
  CHECK(report.verdict == Verdict::Inconclusive);
  CHECK(report.excluded == 400);
}

TEST_CASE("verdict names") {
  CHECK(doctest::String(to_string(Verdict::Cpd)) == "yes");
  CHECK(doctest::String(to_string(Verdict::NotCpd)) == "no");
  CHECK(doctest::String(to_string(Verdict::Inconclusive)) == "inconclusive");
}

TEST_CASE("off-diagonals are invariant under the frame gauge") {
  const SurfacePatch surface = generate(nc2_basic());
  const CpdContext ctx;
  std::mt19937 rng(5150);
  for (int trial = 0; trial < 12; ++trial) {
    const auto [s, t] = random_interior_point(surface, rng);
    const Jet2 j = jet(surface, s, t);
    const auto ff = first_fundamental_form(j);
    const AdaptedFrame fr = decompose_direction(j, ctx);
    const auto base =
        second_fundamental(j, fr.e1, fr.e2, fr.e3, fr.e4, ff);
    for (int flip = 1; flip < 4; ++flip) {
      const Real s2 = (flip & 1) ? -1.0 : 1.0;
      const Real s4 = (flip & 2) ? -1.0 : 1.0;
      const auto flipped = second_fundamental(j, fr.e1, s2 * fr.e2, fr.e3,
                                              s4 * fr.e4, ff);
      CHECK(std::abs(std::abs(flipped.h3_12) - std::abs(base.h3_12)) < 1e-13);
      CHECK(std::abs(std::abs(flipped.h4_12) - std::abs(base.h4_12)) < 1e-13);
      CHECK(std::abs(std::abs(flipped.h4_11) - std::abs(base.h4_11)) < 1e-13);
    }
  }
}

TEST_CASE("verdict and theta field are invariant under rotations fixing k") {
  const SurfacePatch surface = generate(nc1_basic());
  const SurfacePatch rotated =
      rotate_fixing_k(surface, 1.1, Vector3(0.3, -0.8, 0.5));
  const CpdContext ctx;
  const GridSpec grid{};

  const CpdReport a = verify_cpd(surface, ctx, grid);
  const CpdReport b = verify_cpd(rotated, ctx, grid);
  CHECK(a.verdict == Verdict::Cpd);
  CHECK(b.verdict == Verdict::Cpd);

  const ThetaField fa = theta_field(surface, ctx, grid);
  const ThetaField fb = theta_field(rotated, ctx, grid);
  REQUIRE(fa.theta.size() == fb.theta.size());
  for (size_t i = 0; i < fa.theta.size(); ++i) {
    CHECK(std::abs(fa.theta[i] - fb.theta[i]) < 1e-8);
  }
}

TEST_CASE("structure-equation residuals vanish on a generated surface") {
  const SurfacePatch surface = generate(nc1_basic());
  const CpdContext ctx;
  std::mt19937 rng(424242);
  for (int trial = 0; trial < 15; ++trial) {
    const auto [s, t] = random_interior_point(surface, rng);
    const StructureResiduals lr = structure_residuals(surface, ctx, s, t);
    CHECK(std::abs(lr.r_codazzi_a) < 1e-6);
    CHECK(std::abs(lr.r_codazzi_b) < 1e-6);
    CHECK(std::abs(lr.r_theta) < 1e-8);
    CHECK(std::abs(lr.r_m) < 1e-6);
    CHECK(lr.theta == doctest::Approx(s).epsilon(1e-8));
    CHECK(lr.m > 0.0);
  }
}

TEST_CASE("constant-angle case 1 has a vanishing first diagonal entry") {
  const SurfacePatch surface = generate(c1_basic());
  const CpdContext ctx;
  for (Real s : {0.35, 0.8, 1.3}) {
    for (Real t : {0.4, 1.2, 2.2}) {
      const StructureResiduals lr = structure_residuals(surface, ctx, s, t);
      CHECK(std::abs(lr.center.h3_11) < 1e-6);  // S3 = diag(0, *)
      CHECK(std::abs(lr.r_codazzi_a) < 1e-6);
      CHECK(std::abs(lr.r_m) < 1e-6);
    }
  }
}

TEST_CASE("constant-angle case 2 has S3 = 0 entirely") {
  const SurfacePatch surface = generate(c2_basic());
  const CpdContext ctx;
  for (Real s : {0.1, 0.7, 1.1}) {
    for (Real t : {0.3, 1.1, 2.4}) {
      const StructureResiduals lr = structure_residuals(surface, ctx, s, t);
      CHECK(std::abs(lr.center.h3_11) < 1e-8);
      CHECK(std::abs(lr.center.h3_12) < 1e-8);
      CHECK(std::abs(lr.center.h3_22) < 1e-8);
      CHECK(std::abs(lr.r_codazzi_a) < 1e-8);
    }
  }
}

TEST_CASE("residuals demand the adapted chart") {
  CHECK_THROWS_AS(structure_residuals(builtin_surface("generic-graph"),
                                      CpdContext{}, 1.0, 1.0),
                  ChartError);
}

TEST_CASE("theta field is constant along t on generated surfaces") {
  const CpdContext ctx;
  const GridSpec grid{};

  const ThetaField nc = theta_field(generate(nc1_basic()), ctx, grid);
  CHECK(nc.excluded == 0);
  CHECK(nc.max_dtheta_dt < 1e-6);
  // theta(s) = s: nodes must reproduce the profile.
  for (int i = 0; i < nc.ns; ++i) {
    for (int j = 0; j < nc.nt; ++j) {
      CHECK(std::abs(nc.theta[static_cast<size_t>(i) * nc.nt + j] -
                     nc.s_values[i]) < 1e-8);
    }
  }

  const ThetaField c = theta_field(generate(c1_basic()), ctx, grid);
  CHECK(c.max_dtheta_dt < 1e-6);
  CHECK(c.max_dtheta_ds < 1e-6);  // constant angle
}

TEST_CASE("theta varies along t on the graph negative control") {
  const ThetaField field =
      theta_field(builtin_surface("generic-graph"), CpdContext{}, GridSpec{});
  CHECK(field.max_dtheta_dt > 1e-3);
}

TEST_CASE("off-diagonal verdict agrees with eigenvector alignment") {
  const CpdContext ctx;
  const SurfacePatch good = generate(nc2_basic());
  std::mt19937 rng(31337);
  const Real align_tol = std::sqrt(ctx.eigen_align_tol);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [s, t] = random_interior_point(good, rng);
    const Jet2 j = jet(good, s, t);
    const auto ff = first_fundamental_form(j);
    const AdaptedFrame fr = decompose_direction(j, ctx);
    const auto sfd = second_fundamental(j, fr.e1, fr.e2, fr.e3, fr.e4, ff);
    CHECK(eigenvector_misalignment(sfd.S3) < align_tol);
    CHECK(eigenvector_misalignment(sfd.S4) < align_tol);
  }

  const SurfacePatch bad = builtin_surface("generic-graph");
  int disagreements = 0;
  for (int trial = 0; trial < 10; ++trial) {
    const auto [s, t] = random_interior_point(bad, rng);
    const Jet2 j = jet(bad, s, t);
    const auto ff = first_fundamental_form(j);
    const AdaptedFrame fr = decompose_direction(j, ctx);
    const auto sfd = second_fundamental(j, fr.e1, fr.e2, fr.e3, fr.e4, ff);
    const bool off_diag_fails = std::max(std::abs(sfd.h3_12),
                                         std::abs(sfd.h4_12)) >=
                                ctx.eigen_align_tol;
    const bool align_fails =
        std::max(eigenvector_misalignment(sfd.S3),
                 eigenvector_misalignment(sfd.S4)) >= align_tol;
    if (off_diag_fails != align_fails) ++disagreements;
  }
  CHECK(disagreements == 0);
}

TEST_CASE("eigenvector misalignment is zero for diagonal operators") {
  CHECK(eigenvector_misalignment(Sym2{2.0, 0.0, 1.0}) ==
        doctest::Approx(0.0));
  CHECK(eigenvector_misalignment(Sym2{2.0, 1.0, 2.0}) ==
        doctest::Approx(kPi / 4.0));
}

TEST_CASE("combined analysis summarizes predicate, theta, and residuals") {
  const Analysis a =
      analyze(generate(nc1_basic()), CpdContext{}, GridSpec{});
  CHECK(a.cpd.verdict == Verdict::Cpd);
  CHECK(a.theta.max_dtheta_dt < 1e-6);
  CHECK(a.chart_violations == 0);
  CHECK(a.residual_samples > 0);
  REQUIRE(a.max_codazzi_a.has_value());
  REQUIRE(a.max_codazzi_b.has_value());
  CHECK(a.max_codazzi() < 1e-6);
  REQUIRE(a.max_theta_eq.has_value());
  CHECK(*a.max_theta_eq < 1e-8);
  REQUIRE(a.max_m_eq.has_value());
  CHECK(*a.max_m_eq < 1e-6);
}
