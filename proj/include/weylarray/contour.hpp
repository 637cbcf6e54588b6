#pragma once

#include <array>
#include <vector>

namespace weylarray {

/**
 * Scalar field sampled on a regular (nu x nv) vertex grid in plane
 * coordinates. When torus_u/v is set, the last row/column duplicates the
 * first (periodic sampling) and contour lines connect across the seam.
 */
struct GridField {
  int nu = 0, nv = 0;
  std::vector<double> values;  // row-major, index iu * nv + iv
  bool torus_u = false, torus_v = false;

  double at(int iu, int iv) const { return values[iu * nv + iv]; }
};

struct PlanePolyline {
  std::vector<std::array<double, 2>> points;  // (iu, iv) fractional grid coords
  bool closed = false;
};

/// Marching squares with linear interpolation; polylines assembled through
/// shared cell edges (torus-aware). Saddles decided by the cell average.
std::vector<PlanePolyline> marching_squares(const GridField& field, double level);

} // namespace weylarray
