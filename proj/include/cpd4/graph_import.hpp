#pragma once

#include <string>

#include "cpd4/csvio.hpp"
#include "cpd4/surface.hpp"

namespace cpd4 {

// Build a surface from sampled data by tensor-product cubic (Catmull-Rom)
// interpolation; derivatives differentiate the interpolant analytically.
// Requires at least 4 uniformly spaced nodes per axis; the usable domain
// shrinks by one cell on each side.  Throws IoError on bad input.
SurfacePatch surface_from_grid(const SampledGrid& grid,
                               std::string label = "sampled-grid");

}  // namespace cpd4
