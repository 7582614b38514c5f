#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "erosion/constants.hpp"
#include "erosion/profile.hpp"

namespace erosion {

/// Non-negative function sampled on an origin-centered uniform grid covering
/// [-R0, R0]^d, one value per cell (cell centers at -R0 + (i + 1/2) h). Cells
/// whose center lies outside B(0, R0) must stay zero.
class GridFunction {
 public:
  GridFunction(int dim, int cells_per_side, double enclosing_radius);

  int dim() const { return dim_; }
  int cells_per_side() const { return side_; }
  double cell_size() const { return h_; }
  double enclosing_radius() const { return enclosing_; }
  std::size_t cell_count() const { return values_.size(); }
  double cell_volume() const;

  double operator[](std::size_t flat) const { return values_[flat]; }
  /// Throws std::domain_error for negative values or nonzero values at cells
  /// centered outside the enclosing ball.
  void set(std::size_t flat, double value);

  /// Distance of the cell center from the origin.
  double cell_radius(std::size_t flat) const;

  /// h^d * sum of values (compensated summation).
  double l1_norm() const;

 private:
  int dim_;
  int side_;
  double h_;
  double enclosing_;
  std::vector<double> values_;
};

/// Cell-center rasterization of the function encoded by a radius profile.
GridFunction rasterize(const RadiusProfile& profile, int dim, int cells_per_side);

/// h^d * sum |u - v| over cells (compensated summation).
double grid_l1_distance(const GridFunction& u, const GridFunction& v);

/// Distribution rearrangement: replace every superlevel set by the origin-
/// centered ball of equal volume, r(t) = (|{u >= t}| / alpha_d)^(1/d). The
/// result is a step profile with breakpoints at the distinct cell values, so
/// volume is preserved exactly per level (cell-count arithmetic).
RadiusProfile radialize(const GridFunction& u, const DimensionalConstants& consts);

/// Fidelity oracle for the rearrangement inequality: distances to the target
/// before and after radialization, computed against the rasterized target so
/// both sides reduce to exact cell arithmetic. after <= before always.
struct FidelityComparison {
  double before;  // grid L1 distance from u to the rasterized target
  double after;   // L1 distance between the radializations
};
FidelityComparison fidelity_comparison(const GridFunction& u,
                                       const RadiusProfile& target,
                                       const DimensionalConstants& consts);

/// Finite admissible class for the brute-force search: step candidates with
/// `levels` height cells of width `level_width` and radii on the uniform grid
/// {0, radius_max/radius_steps, ..., radius_max}, non-increasing in height.
struct StepGrid {
  int levels;          // m
  double level_width;  // height per level
  int radius_steps;    // k; the grid has k+1 radius values
  double radius_max;

  std::uint64_t candidate_count() const;  // C(m + k, m)
};

struct BruteForceResult {
  std::vector<double> argmin;   // radius per level, non-increasing
  double objective;             // F at the argmin
  bool is_truncation;           // argmin equals the base truncated level-wise
  double support_length;        // level_width * (number of positive levels)
  std::uint64_t candidates;     // size of the enumeration
};

/// Exhaustive minimization of
///   F(r) = omega_d * level_width * #positive + (alpha_d^2 / 2 tau) *
///          (sum level_width |r_j^d - base_j^d|)^2
/// over every monotone candidate on the grid. Enumeration is in lexicographic
/// order and ties keep the first minimizer, so the result is deterministic.
/// Throws std::domain_error when the candidate count exceeds 10^6.
BruteForceResult brute_force_minimizer(const std::vector<double>& base_values,
                                       const StepGrid& grid, double tau,
                                       const DimensionalConstants& consts);

/// The base of a brute-force run as a radius profile (trailing zero levels
/// dropped).
RadiusProfile step_profile_from_values(const std::vector<double>& values,
                                       double level_width, double enclosing_radius);

}  // namespace erosion
