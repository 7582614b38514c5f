#include "erosion/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace erosion {

GridFunction::GridFunction(int dim, int cells_per_side, double enclosing_radius)
    : dim_(dim), side_(cells_per_side), enclosing_(enclosing_radius) {
  if (dim < 2) throw std::domain_error("GridFunction: dimension must be >= 2");
  if (cells_per_side < 1) throw std::domain_error("GridFunction: empty grid");
  if (!(enclosing_radius > 0.0)) {
    throw std::domain_error("GridFunction: enclosing radius must be positive");
  }
  h_ = 2.0 * enclosing_radius / cells_per_side;
  std::size_t total = 1;
  for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(cells_per_side);
  values_.assign(total, 0.0);
}

double GridFunction::cell_volume() const {
  double v = 1.0;
  for (int i = 0; i < dim_; ++i) v *= h_;
  return v;
}

double GridFunction::cell_radius(std::size_t flat) const {
  double r2 = 0.0;
  for (int axis = 0; axis < dim_; ++axis) {
    const auto i = flat % static_cast<std::size_t>(side_);
    flat /= static_cast<std::size_t>(side_);
    const double x = -enclosing_ + (static_cast<double>(i) + 0.5) * h_;
    r2 += x * x;
  }
  return std::sqrt(r2);
}

void GridFunction::set(std::size_t flat, double value) {
  if (value < 0.0) throw std::domain_error("GridFunction: values must be non-negative");
  if (value > 0.0 && cell_radius(flat) > enclosing_) {
    throw std::domain_error("GridFunction: nonzero cell outside the enclosing ball");
  }
  values_[flat] = value;
}

double GridFunction::l1_norm() const {
  double sum = 0.0, carry = 0.0;
  for (double v : values_) {
    const double y = v - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return cell_volume() * sum;
}

GridFunction rasterize(const RadiusProfile& profile, int dim, int cells_per_side) {
  GridFunction g(dim, cells_per_side, profile.enclosing_radius());
  for (std::size_t i = 0; i < g.cell_count(); ++i) {
    const double rho = g.cell_radius(i);
    if (rho > g.enclosing_radius()) continue;
    const double v = radial_value(profile, rho);
    if (v > 0.0) g.set(i, v);
  }
  return g;
}

double grid_l1_distance(const GridFunction& u, const GridFunction& v) {
  if (u.dim() != v.dim() || u.cells_per_side() != v.cells_per_side() ||
      u.enclosing_radius() != v.enclosing_radius()) {
    throw std::domain_error("grid_l1_distance: incompatible grids");
  }
  double sum = 0.0, carry = 0.0;
  for (std::size_t i = 0; i < u.cell_count(); ++i) {
    const double y = std::abs(u[i] - v[i]) - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return u.cell_volume() * sum;
}

RadiusProfile radialize(const GridFunction& u, const DimensionalConstants& consts) {
  if (consts.dim != u.dim()) {
    throw std::domain_error("radialize: dimension mismatch");
  }
  std::vector<double> positive;
  positive.reserve(u.cell_count());
  for (std::size_t i = 0; i < u.cell_count(); ++i) {
    if (u[i] > 0.0) positive.push_back(u[i]);
  }
  if (positive.empty()) return RadiusProfile::zero(u.enclosing_radius());
  std::sort(positive.begin(), positive.end());

  // Distinct values v_1 < ... < v_m; on (v_{k-1}, v_k] the superlevel count is
  // #(values >= v_k).
  const double cell_vol = u.cell_volume();
  const double d = static_cast<double>(u.dim());
  std::vector<std::pair<double, double>> levels;  // (t_hi, radius)
  std::size_t idx = 0;
  while (idx < positive.size()) {
    const double v = positive[idx];
    std::size_t same = idx;
    while (same < positive.size() && positive[same] == v) ++same;
    const auto count = positive.size() - idx;  // #{u >= v}
    const double volume = cell_vol * static_cast<double>(count);
    const double radius = std::pow(volume / consts.unit_ball_volume, 1.0 / d);
    levels.emplace_back(v, radius);
    idx = same;
  }
  return RadiusProfile::step(levels, u.enclosing_radius());
}

FidelityComparison fidelity_comparison(const GridFunction& u,
                                       const RadiusProfile& target,
                                       const DimensionalConstants& consts) {
  const GridFunction target_grid = rasterize(target, u.dim(), u.cells_per_side());
  const RadiusProfile u_radial = radialize(u, consts);
  const RadiusProfile target_radial = radialize(target_grid, consts);
  return FidelityComparison{grid_l1_distance(u, target_grid),
                            l1_distance(u_radial, target_radial, consts)};
}

std::uint64_t StepGrid::candidate_count() const {
  // C(levels + radius_steps, levels), saturating at 2^63.
  const int m = levels, k = radius_steps;
  long double acc = 1.0L;
  for (int i = 1; i <= m; ++i) {
    acc *= static_cast<long double>(k + i) / static_cast<long double>(i);
    if (acc > 9.0e18L) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(acc + 0.5L);
}

BruteForceResult brute_force_minimizer(const std::vector<double>& base_values,
                                       const StepGrid& grid, double tau,
                                       const DimensionalConstants& consts) {
  if (grid.levels < 1 || grid.radius_steps < 1 || !(grid.level_width > 0.0) ||
      !(grid.radius_max > 0.0)) {
    throw std::domain_error("brute_force_minimizer: invalid step grid");
  }
  if (static_cast<int>(base_values.size()) != grid.levels) {
    throw std::domain_error("brute_force_minimizer: base size mismatch");
  }
  if (!(tau > 0.0)) throw std::domain_error("brute_force_minimizer: tau must be positive");
  const std::uint64_t count = grid.candidate_count();
  if (count > 1000000ULL) {
    throw std::domain_error("brute_force_minimizer: enumeration budget exceeded (" +
                            std::to_string(count) + " candidates)");
  }

  const int m = grid.levels;
  const int k = grid.radius_steps;
  const double d = static_cast<double>(consts.dim);
  const double dt = grid.level_width;
  const double alpha = consts.unit_ball_volume;
  const double fid_coeff = alpha * alpha / (2.0 * tau);
  const double willmore_per_level = consts.unit_sphere_area * dt;

  // radius^d for each grid index, and the per-level fidelity contribution.
  std::vector<double> value_pow(k + 1);
  for (int j = 0; j <= k; ++j) {
    const double r = grid.radius_max * static_cast<double>(j) / k;
    value_pow[j] = std::pow(r, d);
  }
  std::vector<double> base_pow(m);
  for (int j = 0; j < m; ++j) base_pow[j] = std::pow(base_values[j], d);

  std::vector<int> current(m, 0);
  std::vector<int> best(m, 0);
  double best_objective = std::numeric_limits<double>::infinity();

  // Depth-first lexicographic enumeration of non-increasing index sequences.
  // fid_acc carries sum dt * |r_j^d - base_j^d| over the prefix.
  auto recurse = [&](auto&& self, int level, int cap, double fid_acc,
                     int positive) -> void {
    if (level == m) {
      const double objective = willmore_per_level * positive +
                               fid_coeff * fid_acc * fid_acc;
      if (objective < best_objective) {
        best_objective = objective;
        best = current;
      }
      return;
    }
    for (int j = 0; j <= cap; ++j) {
      current[level] = j;
      const double contrib = dt * std::abs(value_pow[j] - base_pow[level]);
      self(self, level + 1, j, fid_acc + contrib, positive + (j > 0 ? 1 : 0));
    }
  };
  recurse(recurse, 0, k, 0.0, 0);

  BruteForceResult result;
  result.candidates = count;
  result.objective = best_objective;
  result.argmin.resize(m);
  int positive_levels = 0;
  for (int j = 0; j < m; ++j) {
    result.argmin[j] = grid.radius_max * static_cast<double>(best[j]) / k;
    if (best[j] > 0) ++positive_levels;
  }
  result.support_length = dt * positive_levels;
  result.is_truncation = true;
  for (int j = 0; j < m; ++j) {
    const bool match = result.argmin[j] == base_values[j];
    const bool zero = best[j] == 0;
    if (j < positive_levels ? !match : !zero) {
      result.is_truncation = false;
      break;
    }
  }
  return result;
}

RadiusProfile step_profile_from_values(const std::vector<double>& values,
                                       double level_width, double enclosing_radius) {
  std::vector<std::pair<double, double>> levels;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (values[j] <= 0.0) break;
    levels.emplace_back(level_width * static_cast<double>(j + 1), values[j]);
  }
  // Merge equal consecutive values into single pieces.
  std::vector<std::pair<double, double>> merged;
  for (const auto& lv : levels) {
    if (!merged.empty() && merged.back().second == lv.second) {
      merged.back().first = lv.first;
    } else {
      merged.push_back(lv);
    }
  }
  return RadiusProfile::step(merged, enclosing_radius);
}

}  // namespace erosion
