#pragma once

#include <filesystem>
#include <vector>

#include "cpd4/types.hpp"

namespace cpd4 {

// A rectangular grid of surface samples, row-major with the s index major.
struct SampledGrid {
  std::vector<Real> s_values;  // strictly increasing
  std::vector<Real> t_values;  // strictly increasing
  std::vector<Vector4> points; // size ns() * nt()

  int ns() const { return static_cast<int>(s_values.size()); }
  int nt() const { return static_cast<int>(t_values.size()); }
  const Vector4& at(int i, int j) const {
    return points[static_cast<size_t>(i) * t_values.size() + j];
  }
  Vector4& at(int i, int j) {
    return points[static_cast<size_t>(i) * t_values.size() + j];
  }
};

// Write `s,t,x1,x2,x3,x4` rows (header first, 17 significant digits,
// row-major).  Throws IoError on filesystem problems.
void write_grid_csv(const std::filesystem::path& path, const SampledGrid& grid);

// Read a grid written by write_grid_csv (any row order); validates the
// header, rectangular structure, and duplicate/missing nodes.
SampledGrid read_grid_csv(const std::filesystem::path& path);

}  // namespace cpd4
