#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "erosion/constants.hpp"
#include "erosion/energy.hpp"
#include "erosion/profile.hpp"

namespace erosion {

struct SchemeParams {
  double tau = 1e-3;      // time step, > 0
  double root_tol = 0.0;  // absolute level tolerance; <= 0 selects 1e-12 * a
  int max_steps = 1 << 22;

  double effective_root_tol(double support) const {
    return root_tol > 0.0 ? root_tol : 1e-12 * support;
  }
};

/// The discrete level sequence (lambda_n) and its piecewise-affine
/// interpolant. Levels are non-increasing, start at the support length, and
/// stay at zero once they vanish.
struct ErosionPath {
  std::vector<double> levels;  // lambda_0 .. lambda_N
  double tau = 0.0;
  std::optional<std::size_t> vanish_step;  // first n with lambda_n == 0
  bool complete = true;                    // false when max_steps hit first

  /// lambda_tau(t): affine between nodes, 0 past the vanish time. For an
  /// incomplete path the last level is held beyond the computed range.
  double interpolant(double t) const;
};

/// One scheme step from level lambda_n: sup{ s | f'(s) <= 0 }, located by
/// bisection on the monotone derivative; 0 when f'(0) > 0 (the
/// truncate-to-zero regime). When f' jumps across zero the bisection
/// converges to the jump location. Result lies in [0, lambda_n].
double next_level(const RadiusProfile& base, double lambda_n,
                  const SchemeParams& params, const DimensionalConstants& consts);

/// Iterate next_level from lambda_0 = a until the level vanishes or max_steps.
ErosionPath run_scheme(const RadiusProfile& base, const SchemeParams& params,
                       const DimensionalConstants& consts);

/// Per-step bracket
///   omega_d tau / (r0(0)^{2d} alpha_d^2) <= lambda_n - lambda_{n+1}
///                                        <= omega_d tau / (r0(a-)^{2d} alpha_d^2).
/// When r0(a-) = 0 the upper bound is +infinity and the result is flagged
/// exploratory (the open case).
struct StepBounds {
  double lower = 0.0;
  ExtendedValue upper;
  bool exploratory = false;
};
StepBounds step_bounds(const RadiusProfile& base, const SchemeParams& params,
                       const DimensionalConstants& consts);

/// Upper bound on the extinction time of the discrete scheme:
/// a * r0(0)^{2d} * alpha_d^2 / omega_d.
double stopping_bound(const RadiusProfile& base, const DimensionalConstants& consts);

}  // namespace erosion
