#pragma once

namespace erosion {

/// Dimension-dependent constants of the ambient space.
struct DimensionalConstants {
  int dim;                  // d >= 2
  double unit_ball_volume;  // volume of the unit ball of R^d
  double unit_sphere_area;  // area of the unit sphere, dim * unit_ball_volume
};

/// Constants for dimension d via the gamma function. Throws std::domain_error
/// for d < 2.
DimensionalConstants make_constants(int dim);

}  // namespace erosion
