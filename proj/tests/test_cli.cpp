#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

#include "cpd4/commands.hpp"
#include "cpd4/config.hpp"
#include "cpd4/cpd.hpp"
#include "cpd4/csvio.hpp"
#include "cpd4/errors.hpp"
#include "cpd4/generators.hpp"
#include "cpd4/geometry.hpp"
#include "cpd4/graph_import.hpp"
#include "cpd4/mesh.hpp"
#include "cpd4/report.hpp"
#include "test_support.hpp"

using namespace cpd4;
using namespace testsupport;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::path("cli_scratch") / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

// Minimal recipe config documents used across the tests.
Json nc1_config() {
  Json doc;
  doc["surface"] = {{"kind", "recipe"},
                    {"family", "NC-1"},
                    {"theta", {{"type", "linear"}, {"slope", 1.0}, {"intercept", 0.0}}},
                    {"phi", {{"type", "great-circle"}}},
                    {"psi", {{"type", "constant"}, {"value", 0.3}}},
                    {"s0", 0.3},
                    {"t0", 0.0},
                    {"s_domain", {0.35, 1.2}}};
  doc["label"] = "nc1-config";
  return doc;
}

Json c2_config() {
  Json doc;
  doc["surface"] = {{"kind", "recipe"},
                    {"family", "C-2"},
                    {"theta", {{"type", "constant"}, {"value", 0.7853981633974483}}},
                    {"phi", {{"type", "great-circle"}}},
                    {"rho", 1.0}};
  return doc;
}

Json builtin_config(const std::string& name) {
  Json doc;
  doc["surface"] = {{"kind", "builtin"}, {"name", name}};
  return doc;
}

int run_cli(const std::string& args, const fs::path& dir,
            std::string* out = nullptr, std::string* err = nullptr) {
  const fs::path out_file = dir / "stdout.txt";
  const fs::path err_file = dir / "stderr.txt";
  const std::string cmd = std::string(CPD4_BIN) + " " + args + " > " +
                          out_file.string() + " 2> " + err_file.string();
  const int status = std::system(cmd.c_str());
  if (out) *out = read_text(out_file);
  if (err) *err = read_text(err_file);
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("grid CSV writes and reads back exactly") {
  const fs::path dir = scratch_dir("csv_roundtrip");
  SampledGrid grid;
  grid.s_values = {0.1, 0.25, 1.0 / 3.0};
  grid.t_values = {-2.0, 0.0, 0.5, 7.25};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 4; ++j) {
      grid.points.push_back(Vector4(i * 1.0 + j, std::sqrt(2.0) * i,
                                    -1e-17 * (j + 1), 3.14159e12 * (i + 1)));
    }
  }
  const fs::path path = dir / "grid.csv";
  write_grid_csv(path, grid);

  const std::string text = read_text(path);
  CHECK(text.rfind("s,t,x1,x2,x3,x4\n", 0) == 0);
  CHECK(count_lines(text) == 1 + 12);

  const SampledGrid back = read_grid_csv(path);
  REQUIRE(back.ns() == 3);
  REQUIRE(back.nt() == 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(back.s_values[i] == grid.s_values[i]);  // bit-exact at 17 digits
    for (int j = 0; j < 4; ++j) {
      CHECK((back.at(i, j) - grid.at(i, j)).norm() == 0.0);
    }
  }
}

TEST_CASE("grid CSV accepts permuted rows") {
  const fs::path dir = scratch_dir("csv_permuted");
  write_text(dir / "grid.csv",
             "s,t,x1,x2,x3,x4\n"
             "1,5,0,0,0,4\n"
             "0,5,0,0,0,2\n"
             "1,4,0,0,0,3\n"
             "0,4,0,0,0,1\n");
  const SampledGrid grid = read_grid_csv(dir / "grid.csv");
  REQUIRE(grid.ns() == 2);
  REQUIRE(grid.nt() == 2);
  CHECK(grid.at(0, 0)(3) == 1.0);
  CHECK(grid.at(0, 1)(3) == 2.0);
  CHECK(grid.at(1, 0)(3) == 3.0);
  CHECK(grid.at(1, 1)(3) == 4.0);
}

TEST_CASE("grid CSV rejects malformed input") {
  const fs::path dir = scratch_dir("csv_bad");

  write_text(dir / "header.csv", "s,t,x,y,z,w\n0,0,0,0,0,0\n");
  CHECK_THROWS_AS(read_grid_csv(dir / "header.csv"), IoError);

  write_text(dir / "cell.csv", "s,t,x1,x2,x3,x4\n0,0,zero,0,0,0\n");
  CHECK_THROWS_AS(read_grid_csv(dir / "cell.csv"), IoError);

  write_text(dir / "ragged.csv", "s,t,x1,x2,x3,x4\n0,0,0,0,0\n");
  CHECK_THROWS_AS(read_grid_csv(dir / "ragged.csv"), IoError);

  write_text(dir / "missing.csv",
             "s,t,x1,x2,x3,x4\n"
             "0,0,0,0,0,0\n0,1,0,0,0,0\n1,0,0,0,0,0\n");
  CHECK_THROWS_AS(read_grid_csv(dir / "missing.csv"), IoError);

  write_text(dir / "dup.csv",
             "s,t,x1,x2,x3,x4\n"
             "0,0,0,0,0,0\n0,1,0,0,0,0\n1,0,0,0,0,0\n1,1,0,0,0,0\n"
             "1,1,0,0,0,0\n");
  CHECK_THROWS_AS(read_grid_csv(dir / "dup.csv"), IoError);

  CHECK_THROWS_AS(read_grid_csv(dir / "absent.csv"), IoError);
}

TEST_CASE("config parsing fills the run configuration") {
  Json doc = nc1_config();
  doc["grid"] = {{"ns", 10}, {"nt", 12}, {"margin", 0.05}};
  doc["tolerances"] = {{"eigen_align", 2e-5}, {"residual", 5e-4}};
  doc["output"] = {{"dir", "artifacts"}};
  doc["projection"] = {{"kind", "drop"}, {"coordinate", 2}};

  const RunConfig cfg = parse_config(doc);
  CHECK(cfg.source == RunConfig::Source::Recipe);
  REQUIRE(cfg.recipe.has_value());
  CHECK(cfg.recipe->family == Family::NC1);
  CHECK(cfg.recipe->s0 == 0.3);
  CHECK(cfg.recipe->theta(0.5) == doctest::Approx(0.5));
  CHECK((*cfg.recipe->psi)(1.0) == doctest::Approx(0.3));
  CHECK(cfg.grid_ns == 10);
  CHECK(cfg.grid_nt == 12);
  CHECK(cfg.grid_margin == doctest::Approx(0.05));
  CHECK(cfg.tol.eigen_align == doctest::Approx(2e-5));
  CHECK(cfg.tol.residual == doctest::Approx(5e-4));
  CHECK(cfg.tol.theta_band == doctest::Approx(1e-4));  // default kept
  CHECK(cfg.out_dir == fs::path("artifacts"));
  CHECK(cfg.projection.kind == ProjectionSpec::Kind::DropCoordinate);
  CHECK(cfg.projection.drop_index == 2);
  CHECK(cfg.label == "nc1-config");
  CHECK(cfg.echo == doc);
}

TEST_CASE("config errors cite the offending field path") {
  const auto path_of = [](Json doc) -> std::string {
    try {
      parse_config(doc);
    } catch (const ConfigError& e) {
      return e.path;
    }
    return "";
  };

  CHECK(path_of(Json::object()) == "$.surface");

  Json doc = nc1_config();
  doc["surface"].erase("theta");
  CHECK(path_of(doc) == "surface.theta");

  doc = nc1_config();
  doc["surface"]["theta"] = {{"type", "spline"}};
  CHECK(path_of(doc) == "surface.theta.type");

  doc = nc1_config();
  doc["surface"]["theta"] = {{"type", "linear"},
                             {"slope", "fast"},
                             {"intercept", 0.0}};
  CHECK(path_of(doc) == "surface.theta.slope");

  doc = nc1_config();
  doc["surface"]["family"] = "NC-3";
  CHECK(path_of(doc) == "surface.family");

  doc = nc1_config();
  doc["surface"]["kind"] = "implicit";
  CHECK(path_of(doc) == "surface.kind");

  doc = nc1_config();
  doc["surface"]["s_domain"] = {1.0, 0.5};
  CHECK(path_of(doc) == "surface.s_domain");

  doc = nc1_config();
  doc["grid"] = {{"ns", 4}};
  CHECK(path_of(doc) == "grid.ns");

  doc = nc1_config();
  doc["tolerances"] = {{"residual", -1.0}};
  CHECK(path_of(doc) == "tolerances.residual");

  doc = nc1_config();
  doc["projection"] = {{"kind", "drop"}, {"coordinate", 7}};
  CHECK(path_of(doc) == "projection.coordinate");

  doc = nc1_config();
  doc["projection"] = {{"kind", "orthographic"},
                       {"direction", {0.0, 0.0, 0.0, 0.0}}};
  CHECK(path_of(doc) == "projection.direction");

  doc = builtin_config("moebius");
  CHECK(path_of(doc) == "surface.name");
}

TEST_CASE("load_config reports unreadable and unparsable files") {
  const fs::path dir = scratch_dir("config_files");
  CHECK_THROWS_AS(load_config(dir / "absent.json"), ConfigError);
  write_text(dir / "broken.json", "{ \"surface\": ");
  CHECK_THROWS_AS(load_config(dir / "broken.json"), ConfigError);

  write_text(dir / "good.json", nc1_config().dump(2));
  const RunConfig cfg = load_config(dir / "good.json");
  CHECK(cfg.recipe->family == Family::NC1);
}

TEST_CASE("unknown builtin surface is rejected") {
  CHECK_THROWS_AS(builtin_surface("klein-bottle"), ConfigError);
}

TEST_CASE("generate writes the documented row count") {
  const fs::path dir = scratch_dir("generate_c2");
  RunConfig cfg = parse_config(c2_config());
  cfg.grid_ns = 16;
  cfg.grid_nt = 16;
  cfg.out_dir = dir;
  std::ostringstream out, err;
  CHECK(cmd_generate(cfg, out, err) == 0);
  const std::string text = read_text(dir / "grid.csv");
  CHECK(count_lines(text) == 1 + 256);  // header + 16x16 rows
  CHECK(out.str().find("grid.csv") != std::string::npos);
}

TEST_CASE("verify pipeline: generated family passes") {
  const fs::path dir = scratch_dir("verify_nc1");
  RunConfig cfg = parse_config(nc1_config());
  cfg.out_dir = dir;
  std::ostringstream out, err;
  const int code = cmd_verify(cfg, out, err);
  CHECK(code == 0);
  CHECK(out.str().rfind("CPD: yes  max_offdiag=", 0) == 0);
  CHECK(out.str().find("max_codazzi=") != std::string::npos);

  const Json report = Json::parse(read_text(dir / "report.json"));
  CHECK(report.at("tool") == "cpd4");
  CHECK(report.at("command") == "verify");
  CHECK(report.at("label") == "nc1-config");
  CHECK(report.at("summary").at("verdict") == "yes");
  CHECK(report.at("summary").at("excluded") == 0);
  CHECK(report.at("summary").at("chart_violations") == 0);
  CHECK(report.at("points").size() == 400);
  CHECK(report.at("config") == cfg.echo);
  CHECK(report.at("summary").at("max_offdiag").get<double>() < 1e-5);
  CHECK(report.at("summary").at("max_codazzi").get<double>() < 1e-4);
}

TEST_CASE("verify pipeline: negative and degenerate controls") {
  const fs::path dir = scratch_dir("verify_controls");
  RunConfig graph = parse_config(builtin_config("generic-graph"));
  graph.out_dir = dir / "graph";
  std::ostringstream out1, err1;
  CHECK(cmd_verify(graph, out1, err1) == 1);
  CHECK(out1.str().rfind("CPD: no", 0) == 0);
  const Json graph_report = Json::parse(read_text(dir / "graph/report.json"));
  CHECK(graph_report.at("summary").at("max_offdiag").get<double>() > 1e-2);
  // The graph chart is not the adapted one, so residuals are flagged,
  // not fabricated.
  CHECK(graph_report.at("summary").at("chart_violations").get<int>() == 400);
  CHECK(graph_report.at("summary").at("max_codazzi").is_null());

  RunConfig plane = parse_config(builtin_config("plane-degenerate"));
  plane.out_dir = dir / "plane";
  std::ostringstream out2, err2;
  CHECK(cmd_verify(plane, out2, err2) == 3);
  CHECK(out2.str().rfind("CPD: inconclusive", 0) == 0);
  const Json plane_report = Json::parse(read_text(dir / "plane/report.json"));
  CHECK(plane_report.at("summary").at("excluded") == 400);
}

TEST_CASE("report summary equals the reduction over its points") {
  const fs::path dir = scratch_dir("report_invariant");
  RunConfig cfg = parse_config(nc1_config());
  cfg.out_dir = dir;
  std::ostringstream out, err;
  cmd_verify(cfg, out, err);
  const Json report = Json::parse(read_text(dir / "report.json"));

  const auto recompute = [&](const char* point_field) {
    double best = -1.0;
    for (const Json& p : report.at("points")) {
      const Json& v = p.at(point_field);
      if (v.is_null()) continue;
      best = std::max(best, std::abs(v.get<double>()));
    }
    return best;
  };
  const auto summary_value = [&](const char* field) {
    return report.at("summary").at(field).get<double>();
  };

  CHECK(summary_value("max_h4_11") == recompute("h4_11"));
  CHECK(summary_value("max_dtheta_dt") == recompute("dtheta_dt"));
  CHECK(summary_value("max_dtheta_ds") == recompute("dtheta_ds"));
  CHECK(summary_value("max_r_theta") == recompute("r_theta"));
  CHECK(summary_value("max_r_m") == recompute("r_m"));

  double offdiag = -1.0, codazzi = -1.0;
  for (const Json& p : report.at("points")) {
    for (const char* f : {"h3_12", "h4_12"}) {
      if (!p.at(f).is_null()) {
        offdiag = std::max(offdiag, std::abs(p.at(f).get<double>()));
      }
    }
    for (const char* f : {"r_codazzi_a", "r_codazzi_b"}) {
      if (!p.at(f).is_null()) {
        codazzi = std::max(codazzi, std::abs(p.at(f).get<double>()));
      }
    }
  }
  CHECK(summary_value("max_offdiag") == offdiag);
  CHECK(summary_value("max_codazzi") == codazzi);
}

TEST_CASE("reports are byte-deterministic") {
  const fs::path dir = scratch_dir("determinism");
  RunConfig cfg = parse_config(nc1_config());
  cfg.out_dir = dir / "a";
  std::ostringstream sink1, sink2;
  cmd_verify(cfg, sink1, sink1);
  cfg.out_dir = dir / "b";
  cmd_verify(cfg, sink2, sink2);
  CHECK(read_text(dir / "a/report.json") == read_text(dir / "b/report.json"));
  CHECK(sink1.str() == sink2.str());
}

TEST_CASE("invariants pipeline reports curvature data") {
  const fs::path dir = scratch_dir("invariants_c2");
  RunConfig cfg = parse_config(c2_config());
  cfg.out_dir = dir;
  std::ostringstream out, err;
  CHECK(cmd_invariants(cfg, out, err) == 0);
  CHECK(out.str().rfind("invariants: max_K_gap=", 0) == 0);

  const Json report = Json::parse(read_text(dir / "invariants.json"));
  CHECK(report.at("command") == "invariants");
  CHECK(report.at("summary").at("max_K_gap").get<double>() < 1e-5);
  CHECK(report.at("summary").at("max_commutator").get<double>() < 1e-6);
  CHECK(report.at("summary").at("chart_violations") == 0);
  for (const Json& p : report.at("points")) {
    CHECK(std::abs(p.at("K_ext").get<double>()) < 1e-6);  // flat family
    CHECK(std::abs(p.at("K_int").get<double>()) < 1e-5);
    REQUIRE(p.at("H").is_array());
    // H = (h4_22/2) e4 on this cylinder: |H| = 1/2 with rho = 1.
    Vector4 H;
    for (int i = 0; i < 4; ++i) H(i) = p.at("H").at(i).get<double>();
    CHECK(H.norm() == doctest::Approx(0.5).epsilon(1e-6));
  }
}

TEST_CASE("extrinsic curvature matches the profile closed form") {
  // theta(s) = s, psi = 0.3: K = -theta' cos(theta)/m.
  const SurfacePatch surface = generate(nc1_basic());
  const auto& info = *surface.generated;
  std::mt19937 rng(7001);
  for (int trial = 0; trial < 10; ++trial) {
    const auto [s, t] = random_interior_point(surface, rng);
    const InvariantReport inv = invariant_report(surface, s, t);
    const Real expected = -std::cos(s) / info.m(s, t);
    CHECK(std::abs(inv.K - expected) < 1e-4);
    REQUIRE(inv.K_intrinsic.has_value());
    CHECK(std::abs(*inv.K_intrinsic - expected) < 1e-4);
    CHECK(inv.commutator_norm < 1e-6);
  }
}

TEST_CASE("mesh export: triangle counts, projections, and sidecar") {
  const fs::path dir = scratch_dir("mesh_c2");
  RunConfig cfg = parse_config(c2_config());
  cfg.grid_ns = 16;
  cfg.grid_nt = 16;
  cfg.out_dir = dir;
  std::ostringstream out, err;
  CHECK(cmd_export_mesh(cfg, out, err) == 0);
  CHECK(err.str().empty());

  const std::string obj = read_text(dir / "mesh.obj");
  int v_lines = 0, f_lines = 0, other = 0;
  std::istringstream stream(obj);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.rfind("v ", 0) == 0) {
      ++v_lines;
    } else if (line.rfind("f ", 0) == 0) {
      ++f_lines;
    } else if (!line.empty()) {
      ++other;
    }
  }
  CHECK(v_lines == 256);
  CHECK(f_lines == 450);  // (16-1)*(16-1)*2
  CHECK(other == 0);      // v/f records only

  const SampledGrid sidecar = read_grid_csv(dir / "mesh.csv");
  CHECK(sidecar.ns() == 16);
  CHECK(sidecar.nt() == 16);
}

TEST_CASE("mesh export of a 3-plane surface drops the dead coordinate") {
  GeneratorRecipe r = nc1_basic();
  r.psi = SmoothFunction1D::constant(0.0, kWide);  // surface lies in x4 = 0
  const SurfacePatch surface = generate(r);
  GridSpec grid;
  grid.ns = 12;
  grid.nt = 10;
  ProjectionSpec proj;  // default: drop x4
  const fs::path dir = scratch_dir("mesh_nc1");
  const MeshResult mesh = export_mesh(surface, grid, proj, dir / "m.obj",
                                      dir / "m.csv");
  CHECK(mesh.vertices == 120);
  CHECK(mesh.triangles == 2 * 11 * 9);
  CHECK(mesh.degenerate_cells == 0);
  CHECK_FALSE(mesh.degenerate_warning);
}

TEST_CASE("tangent projection directions are flagged, files still written") {
  const fs::path dir = scratch_dir("mesh_degenerate");
  RunConfig cfg = parse_config(builtin_config("plane-degenerate"));
  // Orthographic projection along the first axis collapses the plane
  // (s,t,0,0) to a line.
  cfg.projection.kind = ProjectionSpec::Kind::Orthographic;
  cfg.projection.direction = Vector4(1, 0, 0, 0);
  cfg.out_dir = dir;
  std::ostringstream out, err;
  CHECK(cmd_export_mesh(cfg, out, err) == 0);
  CHECK(err.str().find("warning") != std::string::npos);
  CHECK(fs::exists(dir / "mesh.obj"));
  CHECK(fs::exists(dir / "mesh.csv"));
}

TEST_CASE("sampled-grid round trip preserves the verdict") {
  const fs::path dir = scratch_dir("roundtrip");

  RunConfig gen = parse_config(nc1_config());
  gen.grid_ns = 96;
  gen.grid_nt = 96;
  gen.grid_margin = 0.0;
  gen.out_dir = dir;
  std::ostringstream sink;
  REQUIRE(cmd_generate(gen, sink, sink) == 0);

  Json doc;
  doc["surface"] = {{"kind", "csv"}, {"path", (dir / "grid.csv").string()}};
  doc["tolerances"] = {{"eigen_align", 1e-3}};  // resampled-derivative noise
  RunConfig ver = parse_config(doc);
  ver.out_dir = dir / "verify";
  std::ostringstream out, err;
  const int code = cmd_verify(ver, out, err);
  CHECK(code == 0);
  CHECK(out.str().rfind("CPD: yes", 0) == 0);

  // Negative control through the same path: still recognized as not CPD.
  RunConfig gen_bad = parse_config(builtin_config("generic-graph"));
  gen_bad.grid_ns = 96;
  gen_bad.grid_nt = 96;
  gen_bad.out_dir = dir / "bad";
  REQUIRE(cmd_generate(gen_bad, sink, sink) == 0);
  Json bad_doc;
  bad_doc["surface"] = {{"kind", "csv"},
                        {"path", (dir / "bad/grid.csv").string()}};
  bad_doc["tolerances"] = {{"eigen_align", 1e-3}};
  RunConfig ver_bad = parse_config(bad_doc);
  ver_bad.out_dir = dir / "bad/verify";
  const int bad_code = cmd_verify(ver_bad, out, err);
  CHECK(bad_code == 1);
}

TEST_CASE("command line: exit codes and help") {
  const fs::path dir = scratch_dir("cli_basic");
  std::string out, err;

  CHECK(run_cli("--help", dir, &out) == 0);
  CHECK(out.find("generate") != std::string::npos);
  CHECK(out.find("export-mesh") != std::string::npos);

  CHECK(run_cli("--version", dir, &out) == 0);
  CHECK(out.find("0.1.0") != std::string::npos);

  CHECK(run_cli("", dir, &out, &err) == 2);          // missing subcommand
  CHECK(run_cli("verify", dir, &out, &err) == 2);    // missing --config
  CHECK(run_cli("frobnicate --config x.json", dir, &out, &err) == 2);
  CHECK(run_cli("verify --config does_not_exist.json", dir, &out, &err) == 2);
  CHECK_FALSE(err.empty());
}

TEST_CASE("command line: config diagnostics cite the field path") {
  const fs::path dir = scratch_dir("cli_diagnostics");
  Json doc = nc1_config();
  doc["surface"]["theta"] = {{"type", "linear"}, {"slope", 1.0}};
  write_text(dir / "bad_theta.json", doc.dump(2));
  std::string out, err;
  CHECK(run_cli("verify --config " + (dir / "bad_theta.json").string(), dir,
                &out, &err) == 2);
  CHECK(err.find("surface.theta.intercept") != std::string::npos);

  // Recipe-level failure: angle profile leaves the admissible band.
  Json wide = nc1_config();
  wide["surface"]["s_domain"] = {0.35, 1.65};
  write_text(dir / "wide.json", wide.dump(2));
  CHECK(run_cli("verify --config " + (dir / "wide.json").string(), dir, &out,
                &err) == 2);
  CHECK(err.find("admissible band") != std::string::npos);
}

TEST_CASE("command line: verdict exit codes and overrides") {
  const fs::path dir = scratch_dir("cli_verify");
  write_text(dir / "nc1.json", nc1_config().dump(2));
  write_text(dir / "graph.json", builtin_config("generic-graph").dump(2));
  write_text(dir / "plane.json", builtin_config("plane-degenerate").dump(2));
  std::string out, err;

  const std::string base = "verify --grid 8x8 --out " + dir.string();
  CHECK(run_cli(base + "/nc1 --config " + (dir / "nc1.json").string(), dir,
                &out, &err) == 0);
  CHECK(out.rfind("CPD: yes", 0) == 0);

  CHECK(run_cli(base + "/graph --config " + (dir / "graph.json").string(),
                dir, &out, &err) == 1);
  CHECK(out.rfind("CPD: no", 0) == 0);

  CHECK(run_cli(base + "/plane --config " + (dir / "plane.json").string(),
                dir, &out, &err) == 3);
  CHECK(out.rfind("CPD: inconclusive", 0) == 0);

  // Grid override shapes the report.
  CHECK(run_cli("verify --grid 9x11 --out " + (dir / "gridded").string() +
                    " --config " + (dir / "nc1.json").string(),
                dir, &out, &err) == 0);
  const Json report = Json::parse(read_text(dir / "gridded/report.json"));
  CHECK(report.at("points").size() == 99);

  CHECK(run_cli("verify --grid 7x7 --config " + (dir / "nc1.json").string(),
                dir, &out, &err) == 2);
  CHECK(err.find("--grid") != std::string::npos);

  // Tolerance override reaches the verdict logic.
  CHECK(run_cli("verify --grid 8x8 --tol 1e-30 --out " +
                    (dir / "strict").string() + " --config " +
                    (dir / "nc1.json").string(),
                dir, &out, &err) == 1);
  CHECK(out.rfind("CPD: no", 0) == 0);
  CHECK(run_cli("verify --tol -1 --config " + (dir / "nc1.json").string(),
                dir, &out, &err) == 2);
}

TEST_CASE("command line: generate and export-mesh artifacts") {
  const fs::path dir = scratch_dir("cli_artifacts");
  write_text(dir / "c2.json", c2_config().dump(2));
  std::string out, err;

  CHECK(run_cli("generate --grid 16x16 --out " + dir.string() + " --config " +
                    (dir / "c2.json").string(),
                dir, &out, &err) == 0);
  CHECK(count_lines(read_text(dir / "grid.csv")) == 257);

  CHECK(run_cli("export-mesh --grid 16x16 --out " + dir.string() +
                    " --config " + (dir / "c2.json").string(),
                dir, &out, &err) == 0);
  CHECK(out.find("450 triangles") != std::string::npos);
  CHECK(fs::exists(dir / "mesh.obj"));
  CHECK(fs::exists(dir / "mesh.csv"));

  CHECK(run_cli("invariants --grid 8x8 --out " + dir.string() + " --config " +
                    (dir / "c2.json").string(),
                dir, &out, &err) == 0);
  CHECK(out.rfind("invariants: max_K_gap=", 0) == 0);
  CHECK(fs::exists(dir / "invariants.json"));
}
