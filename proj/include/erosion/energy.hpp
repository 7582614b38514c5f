#pragma once

#include <functional>

#include "erosion/constants.hpp"
#include "erosion/numeric.hpp"
#include "erosion/profile.hpp"

namespace erosion {

/// Parameters of the relaxed energies and of the one-step functional.
/// Scale-invariant mode is exactly p == dim - 1.
struct EnergyParams {
  double p;    // curvature exponent, > 0
  double tau;  // time step, > 0
  DimensionalConstants consts;

  bool scale_invariant() const { return p == static_cast<double>(consts.dim) - 1.0; }
};

/// Relaxed p-Willmore energy of the encoded function over superlevel balls:
/// omega_d * int_0^a r(t)^(d-1-p) dt. May be the tagged +infinity.
ExtendedValue willmore_p(const RadiusProfile& r, const EnergyParams& params);

/// Scale-invariant energy (p = d-1): omega_d * support_length.
double willmore_scale_invariant(const RadiusProfile& r,
                                const DimensionalConstants& consts);

/// Direct evaluation for a C^1 strictly decreasing radial profile
/// rho -> g(rho) on [0, rho_max]: omega_d * int rho^(d-1-p) |g'(rho)| d rho.
/// Serves as an independent cross-check of willmore_p under the change of
/// variables t = g(rho). Throws std::domain_error if g is not decreasing on a
/// sample grid.
double willmore_direct_radial(const std::function<double(double)>& g,
                              const std::function<double(double)>& g_prime,
                              double rho_max, const EnergyParams& params);

/// One-step minimizing-movement objective
///   F(r) = omega_d |supp r| + (alpha_d^2 / 2 tau) (int |r^d - r0^d|)^2.
double movement_functional(const RadiusProfile& candidate, const RadiusProfile& base,
                           const EnergyParams& params);

/// The one-parameter truncation objective
///   f(lambda) = omega_d lambda + (alpha_d^2 / 2 tau) (int_lambda^lambda_n r0^d)^2
/// and its derivative
///   f'(lambda) = omega_d - (alpha_d^2 / tau) r0(lambda)^d int_lambda^lambda_n r0^d.
/// The left-continuous value r0(lambda-) is used, which keeps f' non-decreasing
/// across jumps. Throws std::domain_error when lambda > lambda_n.
double level_objective(const RadiusProfile& base, double lambda, double lambda_n,
                       const EnergyParams& params);
double level_objective_derivative(const RadiusProfile& base, double lambda,
                                  double lambda_n, const EnergyParams& params);

}  // namespace erosion
