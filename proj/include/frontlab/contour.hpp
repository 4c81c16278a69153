#pragma once

#include <vector>

#include "frontlab/geometry.hpp"
#include "frontlab/grid.hpp"

namespace frontlab {

struct Contour {
  std::vector<Vec2> points;  // closed implicitly when `closed`
  bool closed = true;
};

/// Marching-squares level-set extraction on the bilinear interpolant.
/// Closed contours are oriented counterclockwise around the sub-level
/// region {f < level}. Saddle cells are resolved by the midpoint-value
/// rule. No crossing yields an empty list. Chains that leave the grid are
/// returned open.
std::vector<Contour> extract_level_set(const ScalarField& field, double level);

}  // namespace frontlab
