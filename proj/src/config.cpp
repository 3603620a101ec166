#include "cpd4/config.hpp"

#include <cmath>
#include <fstream>

#include "cpd4/csvio.hpp"
#include "cpd4/errors.hpp"
#include "cpd4/graph_import.hpp"

namespace cpd4 {

namespace {

constexpr Real kWideFunctionDomain = 1e6;

const Json& require_field(const Json& obj, const char* key,
                          const std::string& path) {
  if (!obj.is_object()) {
    throw ConfigError("expected an object", path);
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ConfigError("missing required field", path + "." + key);
  }
  return *it;
}

Real as_number(const Json& value, const std::string& path) {
  if (!value.is_number()) {
    throw ConfigError("expected a number", path);
  }
  return value.get<Real>();
}

int as_int(const Json& value, const std::string& path) {
  if (!value.is_number_integer()) {
    throw ConfigError("expected an integer", path);
  }
  return value.get<int>();
}

std::string as_string(const Json& value, const std::string& path) {
  if (!value.is_string()) {
    throw ConfigError("expected a string", path);
  }
  return value.get<std::string>();
}

Real number_field(const Json& obj, const char* key, const std::string& path) {
  return as_number(require_field(obj, key, path), path + "." + key);
}

Real number_or(const Json& obj, const char* key, const std::string& path,
               Real fallback) {
  if (!obj.is_object() || !obj.contains(key)) return fallback;
  return as_number(obj.at(key), path + "." + key);
}

Interval interval_field(const Json& value, const std::string& path) {
  if (!value.is_array() || value.size() != 2) {
    throw ConfigError("expected an array [lo, hi]", path);
  }
  const Real lo = as_number(value.at(0), path + "[0]");
  const Real hi = as_number(value.at(1), path + "[1]");
  if (!(lo < hi)) {
    throw ConfigError("interval must satisfy lo < hi", path);
  }
  return Interval{lo, hi};
}

SmoothFunction1D parse_profile(const Json& spec, const std::string& path) {
  const std::string type =
      as_string(require_field(spec, "type", path), path + ".type");
  const Interval wide{-kWideFunctionDomain, kWideFunctionDomain};
  if (type == "constant") {
    return SmoothFunction1D::constant(number_field(spec, "value", path), wide);
  }
  if (type == "linear") {
    return SmoothFunction1D::linear(number_field(spec, "slope", path),
                                    number_field(spec, "intercept", path),
                                    wide);
  }
  if (type == "affine-sin") {
    return SmoothFunction1D::affine_sin(number_field(spec, "offset", path),
                                        number_field(spec, "amplitude", path),
                                        number_field(spec, "omega", path),
                                        number_or(spec, "phase", path, 0.0),
                                        wide);
  }
  if (type == "poly") {
    const Json& coeffs = require_field(spec, "coefficients", path);
    if (!coeffs.is_array() || coeffs.empty()) {
      throw ConfigError("expected a non-empty coefficient array",
                        path + ".coefficients");
    }
    std::vector<Real> c;
    for (size_t i = 0; i < coeffs.size(); ++i) {
      c.push_back(as_number(coeffs.at(i),
                            path + ".coefficients[" + std::to_string(i) + "]"));
    }
    return SmoothFunction1D::polynomial(c, wide);
  }
  throw ConfigError("unknown profile type '" + type +
                        "' (expected constant | linear | affine-sin | poly)",
                    path + ".type");
}

SphereCurve parse_phi(const Json& spec, const std::string& path) {
  const std::string type =
      as_string(require_field(spec, "type", path), path + ".type");
  try {
    if (type == "great-circle") return great_circle();
    if (type == "rotated-great-circle") return rotated_great_circle();
    if (type == "latitude-circle") {
      return latitude_circle(number_field(spec, "z0", path));
    }
    if (type == "kappa-one-circle") return kappa_one_circle();
    if (type == "circle") {
      const Json& axis = require_field(spec, "axis", path);
      if (!axis.is_array() || axis.size() != 3) {
        throw ConfigError("expected a 3-component axis [a2, a3, a4]",
                          path + ".axis");
      }
      const Vector4 w(0.0, as_number(axis.at(0), path + ".axis[0]"),
                      as_number(axis.at(1), path + ".axis[1]"),
                      as_number(axis.at(2), path + ".axis[2]"));
      return circle_about_axis(w, number_field(spec, "z0", path));
    }
    if (type == "spiral") {
      return spherical_spiral(number_field(spec, "beta0", path),
                              number_field(spec, "lambda", path));
    }
  } catch (const RecipeError& e) {
    throw ConfigError(e.what(), path);
  }
  throw ConfigError(
      "unknown profile curve type '" + type +
          "' (expected great-circle | rotated-great-circle | latitude-circle "
          "| kappa-one-circle | circle | spiral)",
      path + ".type");
}

GeneratorRecipe parse_recipe(const Json& surface, const std::string& path,
                             Real quad_tol) {
  GeneratorRecipe recipe;
  const std::string family =
      as_string(require_field(surface, "family", path), path + ".family");
  const auto parsed = family_from_name(family);
  if (!parsed) {
    throw ConfigError("unknown family '" + family +
                          "' (expected NC-1 | NC-2 | C-1 | C-2)",
                      path + ".family");
  }
  recipe.family = *parsed;
  recipe.theta =
      parse_profile(require_field(surface, "theta", path), path + ".theta");
  recipe.phi = parse_phi(require_field(surface, "phi", path), path + ".phi");
  if (surface.contains("psi")) {
    recipe.psi = parse_profile(surface.at("psi"), path + ".psi");
  }
  recipe.s0 = number_or(surface, "s0", path, 0.0);
  recipe.t0 = number_or(surface, "t0", path, 0.0);
  recipe.rho = number_or(surface, "rho", path, 1.0);
  if (surface.contains("s_domain")) {
    recipe.s_domain = interval_field(surface.at("s_domain"), path + ".s_domain");
  }
  if (surface.contains("t_domain")) {
    recipe.t_domain = interval_field(surface.at("t_domain"), path + ".t_domain");
  }
  recipe.quad_tol = quad_tol;
  return recipe;
}

}  // namespace

RunConfig parse_config(const Json& doc) {
  if (!doc.is_object()) {
    throw ConfigError("configuration must be a JSON object", "$");
  }
  RunConfig cfg;
  cfg.echo = doc;

  if (doc.contains("tolerances")) {
    const Json& tol = doc.at("tolerances");
    cfg.tol.eigen_align =
        number_or(tol, "eigen_align", "tolerances", cfg.tol.eigen_align);
    cfg.tol.residual =
        number_or(tol, "residual", "tolerances", cfg.tol.residual);
    cfg.tol.theta_band =
        number_or(tol, "theta_band", "tolerances", cfg.tol.theta_band);
    cfg.tol.quadrature =
        number_or(tol, "quadrature", "tolerances", cfg.tol.quadrature);
    for (const char* key :
         {"eigen_align", "residual", "theta_band", "quadrature"}) {
      if (tol.contains(key) &&
          !(as_number(tol.at(key), std::string("tolerances.") + key) > 0)) {
        throw ConfigError("tolerance must be positive",
                          std::string("tolerances.") + key);
      }
    }
  }

  const Json& surface = require_field(doc, "surface", "$");
  const std::string kind =
      as_string(require_field(surface, "kind", "surface"), "surface.kind");
  if (kind == "recipe") {
    cfg.source = RunConfig::Source::Recipe;
    cfg.recipe = parse_recipe(surface, "surface", cfg.tol.quadrature);
  } else if (kind == "csv") {
    cfg.source = RunConfig::Source::Csv;
    cfg.csv_path =
        as_string(require_field(surface, "path", "surface"), "surface.path");
  } else if (kind == "builtin") {
    cfg.source = RunConfig::Source::Builtin;
    cfg.builtin =
        as_string(require_field(surface, "name", "surface"), "surface.name");
    if (cfg.builtin != "generic-graph" && cfg.builtin != "plane-degenerate") {
      throw ConfigError("unknown builtin surface '" + cfg.builtin +
                            "' (expected generic-graph | plane-degenerate)",
                        "surface.name");
    }
  } else {
    throw ConfigError(
        "unknown surface kind '" + kind + "' (expected recipe | csv | builtin)",
        "surface.kind");
  }

  if (doc.contains("grid")) {
    const Json& grid = doc.at("grid");
    if (grid.contains("ns")) cfg.grid_ns = as_int(grid.at("ns"), "grid.ns");
    if (grid.contains("nt")) cfg.grid_nt = as_int(grid.at("nt"), "grid.nt");
    cfg.grid_margin = number_or(grid, "margin", "grid", cfg.grid_margin);
    if (!(cfg.grid_margin >= 0.0 && cfg.grid_margin < 0.5)) {
      throw ConfigError("margin must lie in [0, 0.5)", "grid.margin");
    }
  }
  if (cfg.grid_ns < 8) {
    throw ConfigError("grid resolution must be at least 8 per axis", "grid.ns");
  }
  if (cfg.grid_nt < 8) {
    throw ConfigError("grid resolution must be at least 8 per axis", "grid.nt");
  }

  if (doc.contains("output")) {
    const Json& output = doc.at("output");
    if (output.contains("dir")) {
      cfg.out_dir = as_string(output.at("dir"), "output.dir");
    }
  }

  if (doc.contains("projection")) {
    const Json& proj = doc.at("projection");
    const std::string pk = as_string(require_field(proj, "kind", "projection"),
                                     "projection.kind");
    if (pk == "drop") {
      cfg.projection.kind = ProjectionSpec::Kind::DropCoordinate;
      cfg.projection.drop_index =
          as_int(require_field(proj, "coordinate", "projection"),
                 "projection.coordinate");
      if (cfg.projection.drop_index < 0 || cfg.projection.drop_index > 3) {
        throw ConfigError("coordinate index must be 0..3",
                          "projection.coordinate");
      }
    } else if (pk == "orthographic") {
      const Json& dir = require_field(proj, "direction", "projection");
      if (!dir.is_array() || dir.size() != 4) {
        throw ConfigError("expected a 4-component direction",
                          "projection.direction");
      }
      Vector4 d;
      for (int i = 0; i < 4; ++i) {
        d(i) = as_number(dir.at(i),
                         "projection.direction[" + std::to_string(i) + "]");
      }
      if (!(d.norm() > 1e-12)) {
        throw ConfigError("direction must be nonzero", "projection.direction");
      }
      cfg.projection.kind = ProjectionSpec::Kind::Orthographic;
      cfg.projection.direction = d / d.norm();
    } else {
      throw ConfigError(
          "unknown projection kind '" + pk + "' (expected drop | orthographic)",
          "projection.kind");
    }
  }

  if (doc.contains("label")) {
    cfg.label = as_string(doc.at("label"), "label");
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open configuration file '" + path.string() + "'",
                      "$");
  }
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what(), "$");
  }
  return parse_config(doc);
}

SurfacePatch builtin_surface(const std::string& name) {
  if (name == "generic-graph") {
    // Graph patch (s, t, s t^2 + s^3, s t): not CPD at generic points.
    SurfacePatch patch;
    patch.position = [](Real s, Real t) {
      return Vector4(s, t, s * t * t + s * s * s, s * t);
    };
    patch.analytic_jet = [](Real s, Real t) {
      Jet2 j;
      j.x = Vector4(s, t, s * t * t + s * s * s, s * t);
      j.xs = Vector4(1.0, 0.0, t * t + 3.0 * s * s, t);
      j.xt = Vector4(0.0, 1.0, 2.0 * s * t, s);
      j.xss = Vector4(0.0, 0.0, 6.0 * s, 0.0);
      j.xst = Vector4(0.0, 0.0, 2.0 * t, 1.0);
      j.xtt = Vector4(0.0, 0.0, 2.0 * s, 0.0);
      return j;
    };
    patch.s_domain = Interval{0.5, 1.5};
    patch.t_domain = Interval{0.5, 1.5};
    patch.label = "generic-graph";
    return patch;
  }
  if (name == "plane-degenerate") {
    // Plane containing the fixed direction: theta ~ 0 everywhere.
    SurfacePatch patch;
    patch.position = [](Real s, Real t) { return Vector4(s, t, 0.0, 0.0); };
    patch.analytic_jet = [](Real s, Real t) {
      Jet2 j;
      j.x = Vector4(s, t, 0.0, 0.0);
      j.xs = Vector4(1.0, 0.0, 0.0, 0.0);
      j.xt = Vector4(0.0, 1.0, 0.0, 0.0);
      return j;
    };
    patch.s_domain = Interval{0.0, 1.0};
    patch.t_domain = Interval{0.0, 1.0};
    patch.label = "plane-degenerate";
    return patch;
  }
  throw ConfigError("unknown builtin surface '" + name + "'", "surface.name");
}

SurfacePatch build_surface(const RunConfig& cfg) {
  switch (cfg.source) {
    case RunConfig::Source::Recipe:
      return generate(*cfg.recipe);
    case RunConfig::Source::Csv:
      return surface_from_grid(read_grid_csv(cfg.csv_path),
                               "csv:" + cfg.csv_path.string());
    default:
      return builtin_surface(cfg.builtin);
  }
}

}  // namespace cpd4
