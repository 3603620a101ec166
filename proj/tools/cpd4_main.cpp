#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cpd4/commands.hpp"
#include "cpd4/errors.hpp"

namespace {

using cpd4::ConfigError;
using cpd4::RunConfig;

// Parse an "NxM" resolution override, e.g. "24x16".
void apply_grid_override(RunConfig& cfg, const std::string& spec) {
  int ns = 0;
  int nt = 0;
  char tail = '\0';
  const int got = std::sscanf(spec.c_str(), "%dx%d%c", &ns, &nt, &tail);
  if (got != 2) {
    throw ConfigError("expected a resolution of the form NxM, got '" + spec +
                          "'",
                      "--grid");
  }
  if (ns < 8 || nt < 8) {
    throw ConfigError("grid resolution must be at least 8 per axis", "--grid");
  }
  cfg.grid_ns = ns;
  cfg.grid_nt = nt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Constructs surfaces in Euclidean 4-space whose tangential projection "
      "of a fixed direction is a principal direction, and verifies the "
      "defining predicate and its structure equations numerically."};
  app.set_version_flag("--version", std::string(cpd4::kToolVersion));
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string grid_spec;
  double tol = 0.0;
  bool tol_set = false;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path,
                    "Path to a JSON configuration file")
        ->required();
    sub->add_option("--out", out_dir,
                    "Output directory (overrides the config)");
    sub->add_option("--grid", grid_spec,
                    "Grid resolution NxM (overrides the config)");
    sub->add_option("--tol", tol,
                    "Off-diagonal verdict tolerance (overrides the config)")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { tol_set = true; });
  };

  CLI::App* generate =
      app.add_subcommand("generate", "Sample a surface recipe to a CSV grid");
  CLI::App* verify = app.add_subcommand(
      "verify", "Check the principal-direction predicate over a grid");
  CLI::App* invariants = app.add_subcommand(
      "invariants", "Report curvature invariants over a grid");
  CLI::App* export_mesh = app.add_subcommand(
      "export-mesh", "Project the grid to 3-space and write an OBJ mesh");
  for (CLI::App* sub : {generate, verify, invariants, export_mesh}) {
    add_common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    RunConfig cfg = cpd4::load_config(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!grid_spec.empty()) apply_grid_override(cfg, grid_spec);
    if (tol_set) cfg.tol.eigen_align = tol;

    if (generate->parsed()) return cpd4::cmd_generate(cfg, std::cout, std::cerr);
    if (verify->parsed()) return cpd4::cmd_verify(cfg, std::cout, std::cerr);
    if (invariants->parsed()) {
      return cpd4::cmd_invariants(cfg, std::cout, std::cerr);
    }
    return cpd4::cmd_export_mesh(cfg, std::cout, std::cerr);
  } catch (const cpd4::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
