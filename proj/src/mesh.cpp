#include "cpd4/mesh.hpp"

#include <array>
#include <cstdio>
#include <fstream>

#include "cpd4/errors.hpp"

namespace cpd4 {

namespace {

// Deterministic orthonormal basis of the hyperplane orthogonal to d: the
// standard basis vectors, taken in order, Gram-Schmidt reduced against d and
// each other, skipping near-dependent candidates.
std::array<Vector4, 3> hyperplane_basis(const Vector4& d) {
  std::array<Vector4, 3> basis;
  int found = 0;
  for (int i = 0; i < 4 && found < 3; ++i) {
    Vector4 v = Vector4::Unit(i);
    v -= v.dot(d) * d;
    for (int k = 0; k < found; ++k) v -= v.dot(basis[k]) * basis[k];
    if (v.norm() > 1e-8) basis[found++] = v / v.norm();
  }
  if (found < 3) {
    throw ConfigError("projection direction does not define a hyperplane",
                      "projection.direction");
  }
  return basis;
}

Real triangle_area(const Vector3& a, const Vector3& b, const Vector3& c) {
  return 0.5 * (b - a).cross(c - a).norm();
}

}  // namespace

SampledGrid sample_surface(const SurfacePatch& surface, const GridSpec& grid) {
  SampledGrid out;
  out.s_values = grid.s_nodes(surface);
  out.t_values = grid.t_nodes(surface);
  out.points.reserve(out.s_values.size() * out.t_values.size());
  for (Real s : out.s_values) {
    for (Real t : out.t_values) {
      out.points.push_back(surface.position(s, t));
    }
  }
  return out;
}

Vector3 project_point(const Vector4& x, const ProjectionSpec& projection) {
  if (projection.kind == ProjectionSpec::Kind::DropCoordinate) {
    Vector3 p;
    int k = 0;
    for (int i = 0; i < 4; ++i) {
      if (i == projection.drop_index) continue;
      p(k++) = x(i);
    }
    return p;
  }
  const Vector4 d = projection.direction.normalized();
  const std::array<Vector4, 3> basis = hyperplane_basis(d);
  return Vector3(basis[0].dot(x), basis[1].dot(x), basis[2].dot(x));
}

MeshResult export_mesh(const SurfacePatch& surface, const GridSpec& grid,
                       const ProjectionSpec& projection,
                       const std::filesystem::path& obj_path,
                       const std::filesystem::path& csv_path) {
  const SampledGrid samples = sample_surface(surface, grid);
  const int ns = samples.ns();
  const int nt = samples.nt();
  if (ns < 2 || nt < 2) {
    throw ConfigError("mesh export needs at least a 2x2 grid", "grid");
  }

  std::vector<Vector3> projected;
  projected.reserve(samples.points.size());
  for (const Vector4& x : samples.points) {
    projected.push_back(project_point(x, projection));
  }

  MeshResult result;
  result.vertices = ns * nt;
  result.cells = (ns - 1) * (nt - 1);
  result.obj_path = obj_path;
  result.csv_path = csv_path;

  std::ofstream obj(obj_path);
  if (!obj) {
    throw IoError("cannot open mesh file for writing: " + obj_path.string());
  }
  char line[128];
  for (const Vector3& p : projected) {
    std::snprintf(line, sizeof(line), "v %.9g %.9g %.9g\n", p(0), p(1), p(2));
    obj << line;
  }
  const auto vid = [nt](int i, int j) { return i * nt + j + 1; };  // 1-based
  for (int i = 0; i + 1 < ns; ++i) {
    for (int j = 0; j + 1 < nt; ++j) {
      const Vector3& a = projected[i * nt + j];
      const Vector3& b = projected[(i + 1) * nt + j];
      const Vector3& c = projected[(i + 1) * nt + j + 1];
      const Vector3& d = projected[i * nt + j + 1];
      const Real scale = std::max({(b - a).squaredNorm(), (c - b).squaredNorm(),
                                   (d - c).squaredNorm(), (a - d).squaredNorm(),
                                   Real(1e-30)});
      if (triangle_area(a, b, c) + triangle_area(a, c, d) < 1e-10 * scale) {
        ++result.degenerate_cells;
      }
      std::snprintf(line, sizeof(line), "f %d %d %d\nf %d %d %d\n",
                    vid(i, j), vid(i + 1, j), vid(i + 1, j + 1),
                    vid(i, j), vid(i + 1, j + 1), vid(i, j + 1));
      obj << line;
      result.triangles += 2;
    }
  }
  if (!obj) {
    throw IoError("failed while writing mesh file: " + obj_path.string());
  }
  obj.close();

  write_grid_csv(csv_path, samples);

  result.degenerate_warning = 2 * result.degenerate_cells > result.cells;
  return result;
}

}  // namespace cpd4
