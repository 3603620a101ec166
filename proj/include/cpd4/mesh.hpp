#pragma once

#include <filesystem>

#include "cpd4/config.hpp"
#include "cpd4/cpd.hpp"
#include "cpd4/csvio.hpp"
#include "cpd4/surface.hpp"

namespace cpd4 {

// Evaluate surface positions on the inset grid, row-major in s.
SampledGrid sample_surface(const SurfacePatch& surface, const GridSpec& grid);

struct MeshResult {
  int vertices = 0;
  int triangles = 0;
  int cells = 0;
  int degenerate_cells = 0;       // cells whose projection collapses
  bool degenerate_warning = false;  // more than half the cells collapsed
  std::filesystem::path obj_path;
  std::filesystem::path csv_path;
};

// Project the sampled grid to 3-space and write a triangulated OBJ
// (`v`/`f` records only, two triangles per cell, row-major 1-based vertex
// indices) plus a sidecar CSV retaining all four coordinates.  A collapsed
// projection produces a warning flag but both files are still written.
MeshResult export_mesh(const SurfacePatch& surface, const GridSpec& grid,
                       const ProjectionSpec& projection,
                       const std::filesystem::path& obj_path,
                       const std::filesystem::path& csv_path);

// 3-vector image of a point under the projection spec (exposed for tests).
Vector3 project_point(const Vector4& x, const ProjectionSpec& projection);

}  // namespace cpd4
