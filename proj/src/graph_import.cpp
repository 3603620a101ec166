#include "cpd4/graph_import.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "cpd4/errors.hpp"

namespace cpd4 {

namespace {

struct Weights {
  std::array<Real, 4> w, dw, ddw;
};

// Catmull-Rom basis on [0,1]; interpolates the middle two control points.
Weights cr_weights(Real u) {
  const Real u2 = u * u, u3 = u2 * u;
  Weights k;
  k.w = {0.5 * (-u3 + 2.0 * u2 - u), 0.5 * (3.0 * u3 - 5.0 * u2 + 2.0),
         0.5 * (-3.0 * u3 + 4.0 * u2 + u), 0.5 * (u3 - u2)};
  k.dw = {0.5 * (-3.0 * u2 + 4.0 * u - 1.0), 0.5 * (9.0 * u2 - 10.0 * u),
          0.5 * (-9.0 * u2 + 8.0 * u + 1.0), 0.5 * (3.0 * u2 - 2.0 * u)};
  k.ddw = {0.5 * (-6.0 * u + 4.0), 0.5 * (18.0 * u - 10.0),
           0.5 * (-18.0 * u + 8.0), 0.5 * (6.0 * u - 2.0)};
  return k;
}

Real uniform_spacing(const std::vector<Real>& values, const char* axis) {
  const Real span = values.back() - values.front();
  const Real step = span / static_cast<Real>(values.size() - 1);
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    if (std::abs(values[i + 1] - values[i] - step) >
        1e-9 * std::max(Real(1), std::abs(span))) {
      throw IoError(std::string("sampled grid is not uniformly spaced along ") +
                    axis + " near index " + std::to_string(i));
    }
  }
  return step;
}

struct Interpolator {
  SampledGrid grid;
  Real ds, dt;

  // Cell index and local coordinate for one axis.
  static std::pair<int, Real> locate(const std::vector<Real>& values,
                                     Real step, Real x) {
    const int n = static_cast<int>(values.size());
    int i = static_cast<int>(std::floor((x - values[0]) / step));
    i = std::clamp(i, 1, n - 3);
    return {i, (x - values[i]) / step};
  }

  Jet2 jet_at(Real s, Real t) const {
    const auto [i, u] = locate(grid.s_values, ds, s);
    const auto [j, v] = locate(grid.t_values, dt, t);
    const Weights ws = cr_weights(u);
    const Weights wt = cr_weights(v);

    Jet2 out;
    out.s = s;
    out.t = t;
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        const Vector4& p = grid.at(i - 1 + a, j - 1 + b);
        out.x += ws.w[a] * wt.w[b] * p;
        out.xs += ws.dw[a] * wt.w[b] * p;
        out.xt += ws.w[a] * wt.dw[b] * p;
        out.xss += ws.ddw[a] * wt.w[b] * p;
        out.xst += ws.dw[a] * wt.dw[b] * p;
        out.xtt += ws.w[a] * wt.ddw[b] * p;
      }
    }
    out.xs /= ds;
    out.xt /= dt;
    out.xss /= ds * ds;
    out.xst /= ds * dt;
    out.xtt /= dt * dt;
    return out;
  }
};

}  // namespace

SurfacePatch surface_from_grid(const SampledGrid& grid, std::string label) {
  if (grid.ns() < 4 || grid.nt() < 4) {
    throw IoError("sampled grid needs at least 4 nodes per axis (got " +
                  std::to_string(grid.ns()) + "x" + std::to_string(grid.nt()) +
                  ")");
  }
  if (static_cast<int>(grid.points.size()) != grid.ns() * grid.nt()) {
    throw IoError("sampled grid point count does not match its axes");
  }
  auto interp = std::make_shared<Interpolator>();
  interp->grid = grid;
  interp->ds = uniform_spacing(grid.s_values, "s");
  interp->dt = uniform_spacing(grid.t_values, "t");

  SurfacePatch patch;
  patch.s_domain = Interval{grid.s_values[1], grid.s_values[grid.ns() - 2]};
  patch.t_domain = Interval{grid.t_values[1], grid.t_values[grid.nt() - 2]};
  patch.label = std::move(label);
  patch.position = [interp](Real s, Real t) { return interp->jet_at(s, t).x; };
  patch.analytic_jet = [interp](Real s, Real t) { return interp->jet_at(s, t); };
  return patch;
}

}  // namespace cpd4
