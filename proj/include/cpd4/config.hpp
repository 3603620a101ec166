#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "cpd4/generators.hpp"
#include "cpd4/surface.hpp"
#include "cpd4/types.hpp"

namespace cpd4 {

using Json = nlohmann::ordered_json;

struct ToleranceConfig {
  Real eigen_align = 1e-5;
  Real residual = 1e-4;
  Real theta_band = 1e-4;
  Real quadrature = 1e-10;
};

struct ProjectionSpec {
  enum class Kind { DropCoordinate, Orthographic };
  Kind kind = Kind::DropCoordinate;
  int drop_index = 3;                          // 0-based coordinate to drop
  Vector4 direction = Vector4(0, 0, 0, 1);     // orthographic direction
};

// Parsed run configuration shared by all commands.
struct RunConfig {
  enum class Source { Recipe, Csv, Builtin };
  Source source = Source::Recipe;
  std::optional<GeneratorRecipe> recipe;
  std::filesystem::path csv_path;  // Source::Csv
  std::string builtin;             // Source::Builtin
  int grid_ns = 20;
  int grid_nt = 20;
  Real grid_margin = 0.02;
  ToleranceConfig tol;
  std::filesystem::path out_dir = ".";
  ProjectionSpec projection;
  std::string label;
  Json echo;  // the raw document, echoed into reports
};

// Parse a configuration document; ConfigError messages carry the offending
// field path.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::filesystem::path& path);

// Materialize the configured surface (generator recipe, CSV ingestion, or a
// named builtin).  Throws RecipeError / IoError / ConfigError.
SurfacePatch build_surface(const RunConfig& cfg);

// The builtin sample surfaces: "generic-graph" (a non-CPD graph patch) and
// "plane-degenerate" (the fixed direction is everywhere tangent).
SurfacePatch builtin_surface(const std::string& name);

}  // namespace cpd4
