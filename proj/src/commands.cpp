#include "cpd4/commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

#include "cpd4/cpd.hpp"
#include "cpd4/csvio.hpp"
#include "cpd4/errors.hpp"
#include "cpd4/geometry.hpp"
#include "cpd4/mesh.hpp"

namespace cpd4 {

namespace {

CpdContext context_from(const RunConfig& cfg) {
  CpdContext ctx;
  ctx.eigen_align_tol = cfg.tol.eigen_align;
  ctx.residual_tol = cfg.tol.residual;
  ctx.theta_band = cfg.tol.theta_band;
  return ctx;
}

GridSpec grid_from(const RunConfig& cfg) {
  GridSpec grid;
  grid.ns = cfg.grid_ns;
  grid.nt = cfg.grid_nt;
  grid.margin = cfg.grid_margin;
  return grid;
}

std::string pick_label(const RunConfig& cfg, const SurfacePatch& surface) {
  return cfg.label.empty() ? surface.label : cfg.label;
}

std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  return cfg.out_dir;
}

std::string format_or_na(Real x) {
  if (!std::isfinite(x)) return "n/a";
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

ReportDocument base_document(const RunConfig& cfg, const char* command,
                             const SurfacePatch& surface) {
  ReportDocument doc;
  doc.command = command;
  doc.label = pick_label(cfg, surface);
  doc.config_echo = cfg.echo;
  return doc;
}

}  // namespace

int verdict_exit_code(const std::string& verdict) {
  if (verdict == "yes") return 0;
  if (verdict == "no") return 1;
  return 3;
}

ReportDocument verify_document(const RunConfig& cfg) {
  const SurfacePatch surface = build_surface(cfg);
  const CpdContext ctx = context_from(cfg);
  const GridSpec grid = grid_from(cfg);

  const CpdReport cpd = verify_cpd(surface, ctx, grid);
  const ThetaField field = theta_field(surface, ctx, grid);

  ReportDocument doc = base_document(cfg, "verify", surface);
  doc.points.reserve(cpd.points.size());

  const int ns = cpd.ns;
  const int nt = cpd.nt;
  const auto theta_at_node = [&](int i, int j) {
    return field.theta[static_cast<size_t>(i) * nt + j];
  };
  const Real nan = std::numeric_limits<Real>::quiet_NaN();
  const Real ds = ns >= 2 ? cpd.s_values[1] - cpd.s_values[0] : nan;
  const Real dt = nt >= 2 ? cpd.t_values[1] - cpd.t_values[0] : nan;

  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nt; ++j) {
      const CpdPointRecord& rec = cpd.points[static_cast<size_t>(i) * nt + j];
      ReportPoint p;
      p.s = rec.s;
      p.t = rec.t;
      p.excluded = rec.excluded;
      if (!rec.excluded) {
        p.theta = rec.theta;
        p.h3_11 = rec.h3_11;
        p.h3_12 = rec.h3_12;
        p.h3_22 = rec.h3_22;
        p.h4_11 = rec.h4_11;
        p.h4_12 = rec.h4_12;
        p.h4_22 = rec.h4_22;
        p.e1_theta = rec.e1_theta;
      }
      // Same interior central-difference stencil as the theta-field maxima.
      if (i > 0 && i + 1 < ns) {
        p.dtheta_ds = (theta_at_node(i + 1, j) - theta_at_node(i - 1, j)) /
                      (2.0 * ds);
      }
      if (j > 0 && j + 1 < nt) {
        p.dtheta_dt = (theta_at_node(i, j + 1) - theta_at_node(i, j - 1)) /
                      (2.0 * dt);
      }
      try {
        const StructureResiduals lr =
            structure_residuals(surface, ctx, rec.s, rec.t);
        p.r_codazzi_a = lr.r_codazzi_a;
        p.r_codazzi_b = lr.r_codazzi_b;
        p.r_theta = lr.r_theta;
        p.r_m = lr.r_m;
      } catch (const ChartError&) {
        p.chart_failed = true;
      } catch (const Error&) {
        // Degenerate or irregular stencil point: residuals stay unset.
      }
      doc.points.push_back(p);
    }
  }

  doc.summary = summarize(doc.points);
  doc.summary.verdict = to_string(cpd.verdict);
  return doc;
}

ReportDocument invariants_document(const RunConfig& cfg) {
  const SurfacePatch surface = build_surface(cfg);
  const GridSpec grid = grid_from(cfg);
  const std::vector<Real> s_nodes = grid.s_nodes(surface);
  const std::vector<Real> t_nodes = grid.t_nodes(surface);

  ReportDocument doc = base_document(cfg, "invariants", surface);
  doc.points.reserve(s_nodes.size() * t_nodes.size());

  for (Real s : s_nodes) {
    for (Real t : t_nodes) {
      ReportPoint p;
      p.s = s;
      p.t = t;
      try {
        const InvariantReport inv = invariant_report(surface, s, t);
        p.K_ext = inv.K;
        if (inv.K_intrinsic) {
          p.K_int = *inv.K_intrinsic;
        } else {
          p.chart_failed = true;
        }
        p.commutator = inv.commutator_norm;
        p.H = inv.H;
      } catch (const Error&) {
        p.excluded = true;
      }
      doc.points.push_back(p);
    }
  }

  doc.summary = summarize(doc.points);
  return doc;
}

int cmd_generate(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const SurfacePatch surface = build_surface(cfg);
  const SampledGrid samples = sample_surface(surface, grid_from(cfg));
  const std::filesystem::path path = prepare_out_dir(cfg) / "grid.csv";
  write_grid_csv(path, samples);
  out << "wrote " << path.string() << " (" << samples.ns() << "x"
      << samples.nt() << " grid)\n";
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  ReportDocument doc = verify_document(cfg);
  const std::filesystem::path path = prepare_out_dir(cfg) / "report.json";
  write_report(doc, path);
  out << "CPD: " << doc.summary.verdict
      << "  max_offdiag=" << format_or_na(doc.summary.max_offdiag)
      << "  max_codazzi=" << format_or_na(doc.summary.max_codazzi) << "\n";
  return verdict_exit_code(doc.summary.verdict);
}

int cmd_invariants(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  ReportDocument doc = invariants_document(cfg);
  const std::filesystem::path path = prepare_out_dir(cfg) / "invariants.json";
  write_report(doc, path);
  out << "invariants: max_K_gap=" << format_or_na(doc.summary.max_K_gap)
      << "  max_commutator=" << format_or_na(doc.summary.max_commutator)
      << "  chart_violations=" << doc.summary.chart_violations << "\n";
  return 0;
}

int cmd_export_mesh(const RunConfig& cfg, std::ostream& out,
                    std::ostream& err) {
  const SurfacePatch surface = build_surface(cfg);
  const std::filesystem::path dir = prepare_out_dir(cfg);
  const MeshResult mesh =
      export_mesh(surface, grid_from(cfg), cfg.projection, dir / "mesh.obj",
                  dir / "mesh.csv");
  out << "wrote " << mesh.obj_path.string() << " (" << mesh.vertices
      << " vertices, " << mesh.triangles << " triangles)\n";
  if (mesh.degenerate_warning) {
    err << "warning: projection collapses " << mesh.degenerate_cells << " of "
        << mesh.cells << " cells\n";
  }
  return 0;
}

}  // namespace cpd4
