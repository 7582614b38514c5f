#include "erosion/scheme.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace erosion {

double ErosionPath::interpolant(double t) const {
  if (t < 0.0) throw std::domain_error("ErosionPath::interpolant: negative time");
  if (levels.empty()) return 0.0;
  const double x = t / tau;
  const auto n = static_cast<std::size_t>(x);
  if (n + 1 >= levels.size()) {
    return vanish_step ? 0.0 : levels.back();
  }
  return levels[n] + (x - static_cast<double>(n)) * (levels[n + 1] - levels[n]);
}

double next_level(const RadiusProfile& base, double lambda_n,
                  const SchemeParams& params, const DimensionalConstants& consts) {
  const double a = base.support_length();
  if (lambda_n < 0.0 || lambda_n > a) {
    throw std::domain_error("next_level: lambda_n outside [0, a]");
  }
  if (lambda_n == 0.0) return 0.0;

  const EnergyParams ep{static_cast<double>(consts.dim) - 1.0, params.tau, consts};
  if (level_objective_derivative(base, 0.0, lambda_n, ep) > 0.0) return 0.0;

  // f' is non-decreasing with f'(lambda_n) = omega_d > 0; keep the invariant
  // f'(lo) <= 0 < f'(hi). Ties f' == 0 move lo, so a flat stretch of exact
  // zeros resolves to its supremum.
  const double tol = params.effective_root_tol(a);
  double lo = 0.0;
  double hi = lambda_n;
  int iterations = 0;
  constexpr int kMaxIterations = 256;
  while (hi - lo > tol) {
    if (++iterations > kMaxIterations) {
      throw numeric_error("next_level: bisection depth exceeded on bracket [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]",
                          hi - lo);
    }
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // floating-point resolution reached
    if (level_objective_derivative(base, mid, lambda_n, ep) <= 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

ErosionPath run_scheme(const RadiusProfile& base, const SchemeParams& params,
                       const DimensionalConstants& consts) {
  if (!(params.tau > 0.0)) throw std::domain_error("run_scheme: tau must be positive");
  if (params.max_steps < 1) throw std::domain_error("run_scheme: max_steps must be >= 1");

  ErosionPath path;
  path.tau = params.tau;
  double level = base.support_length();
  path.levels.push_back(level);
  if (level == 0.0) {
    path.vanish_step = 0;
    return path;
  }
  for (int n = 0; n < params.max_steps; ++n) {
    level = next_level(base, level, params, consts);
    path.levels.push_back(level);
    if (level == 0.0) {
      path.vanish_step = path.levels.size() - 1;
      return path;
    }
  }
  path.complete = false;
  return path;
}

StepBounds step_bounds(const RadiusProfile& base, const SchemeParams& params,
                       const DimensionalConstants& consts) {
  const double d2 = 2.0 * static_cast<double>(consts.dim);
  const double alpha2 = consts.unit_ball_volume * consts.unit_ball_volume;
  const double num = consts.unit_sphere_area * params.tau;
  const double r_top = base.value(0.0);
  const double r_bottom = base.left_limit(base.support_length());

  StepBounds bounds;
  bounds.lower = base.is_zero() ? 0.0 : num / (std::pow(r_top, d2) * alpha2);
  if (r_bottom > 0.0) {
    bounds.upper = ExtendedValue::finite(num / (std::pow(r_bottom, d2) * alpha2));
  } else {
    bounds.upper = ExtendedValue::infinity();
    bounds.exploratory = true;
  }
  return bounds;
}

double stopping_bound(const RadiusProfile& base, const DimensionalConstants& consts) {
  if (base.is_zero()) return 0.0;
  const double d2 = 2.0 * static_cast<double>(consts.dim);
  const double alpha2 = consts.unit_ball_volume * consts.unit_ball_volume;
  return base.support_length() * std::pow(base.value(0.0), d2) * alpha2 /
         consts.unit_sphere_area;
}

}  // namespace erosion
