#include "erosion/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace erosion {

namespace {

void check_params(const EnergyParams& params) {
  if (!(params.p > 0.0)) throw std::domain_error("EnergyParams: p must be positive");
  if (!(params.tau > 0.0)) throw std::domain_error("EnergyParams: tau must be positive");
}

}  // namespace

ExtendedValue willmore_p(const RadiusProfile& r, const EnergyParams& params) {
  check_params(params);
  const double e = static_cast<double>(params.consts.dim) - 1.0 - params.p;
  return params.consts.unit_sphere_area *
         integral_power(r, e, 0.0, r.support_length());
}

double willmore_scale_invariant(const RadiusProfile& r,
                                const DimensionalConstants& consts) {
  return consts.unit_sphere_area * r.support_length();
}

double willmore_direct_radial(const std::function<double(double)>& g,
                              const std::function<double(double)>& g_prime,
                              double rho_max, const EnergyParams& params) {
  check_params(params);
  if (!(rho_max > 0.0)) throw std::domain_error("willmore_direct_radial: empty support");
  constexpr int kMonotoneSamples = 512;
  double prev = g(0.0);
  for (int i = 1; i <= kMonotoneSamples; ++i) {
    const double rho = rho_max * static_cast<double>(i) / kMonotoneSamples;
    const double here = g(rho);
    if (here >= prev) {
      throw std::domain_error("willmore_direct_radial: g is not strictly decreasing");
    }
    prev = here;
  }
  const double e = static_cast<double>(params.consts.dim) - 1.0 - params.p;
  auto integrand = [&](double rho) {
    return std::pow(rho, e) * std::abs(g_prime(rho));
  };
  return params.consts.unit_sphere_area *
         adaptive_simpson(integrand, 0.0, rho_max);
}

double movement_functional(const RadiusProfile& candidate, const RadiusProfile& base,
                           const EnergyParams& params) {
  check_params(params);
  const double alpha = params.consts.unit_ball_volume;
  const double inner = l1_distance(candidate, base, params.consts) / alpha;
  return params.consts.unit_sphere_area * candidate.support_length() +
         alpha * alpha / (2.0 * params.tau) * inner * inner;
}

double level_objective(const RadiusProfile& base, double lambda, double lambda_n,
                       const EnergyParams& params) {
  check_params(params);
  if (lambda < 0.0 || lambda > lambda_n) {
    throw std::domain_error("level_objective: lambda outside [0, lambda_n]");
  }
  const double d = static_cast<double>(params.consts.dim);
  const double alpha = params.consts.unit_ball_volume;
  const double tail = integral_power(base, d, lambda, lambda_n).value();
  return params.consts.unit_sphere_area * lambda +
         alpha * alpha / (2.0 * params.tau) * tail * tail;
}

double level_objective_derivative(const RadiusProfile& base, double lambda,
                                  double lambda_n, const EnergyParams& params) {
  check_params(params);
  if (lambda < 0.0 || lambda > lambda_n) {
    throw std::domain_error("level_objective_derivative: lambda outside [0, lambda_n]");
  }
  const double d = static_cast<double>(params.consts.dim);
  const double alpha = params.consts.unit_ball_volume;
  const double r_left = base.value(lambda);
  const double tail = integral_power(base, d, lambda, lambda_n).value();
  return params.consts.unit_sphere_area -
         alpha * alpha / params.tau * std::pow(r_left, d) * tail;
}

}  // namespace erosion
