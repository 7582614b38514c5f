#pragma once

#include <optional>
#include <vector>

#include "erosion/constants.hpp"
#include "erosion/profile.hpp"

namespace erosion {

struct OdeParams {
  double step_tol = 1e-10;   // local error tolerance of the adaptive stepper
  double event_tol = 1e-12;  // tolerance for piece-boundary / zero crossings
  double t_max = 1e30;
  bool exploratory = false;         // allow the open case r0(lambda0-) = 0
  double exploratory_offset = 1e-6; // start at lambda0 * (1 - offset) then
};

/// Two-sided bound on the erosion speed at a level: the flow obeys
///   -omega_d / (alpha_d^2 r0(lambda+)^{2d}) <= lambda' <=
///   -omega_d / (alpha_d^2 r0(lambda-)^{2d}).
/// Degenerate (lower == upper) at continuity points; lower is -infinity at a
/// jump onto the empty set (r0(lambda+) = 0).
struct SpeedBracket {
  double lower;
  double upper;
  bool degenerate() const { return lower == upper; }
};

SpeedBracket erosion_speed(const RadiusProfile& base, double lambda,
                           const DimensionalConstants& consts);

/// A computed erosion trajectory lambda(t): non-increasing, Lipschitz between
/// jump levels of r0, linear in time where r0 is piecewise constant.
class Trajectory {
 public:
  struct Node {
    double t;
    double lambda;
    double slope_in;   // d lambda/dt as the node is reached
    double slope_out;  // d lambda/dt leaving the node (0 at extinction)
  };

  /// Dense evaluation by cubic Hermite interpolation between nodes; exact at
  /// nodes, clamped monotone, 0 past the vanish time.
  double value(double t) const;

  const std::vector<Node>& nodes() const { return nodes_; }
  std::optional<double> vanish_time() const { return vanish_time_; }
  bool reached_t_max() const { return reached_t_max_; }
  double lambda0() const { return nodes_.front().lambda; }

 private:
  friend Trajectory integrate_erosion(const RadiusProfile&, double,
                                      const OdeParams&, const DimensionalConstants&);
  std::vector<Node> nodes_;
  std::optional<double> vanish_time_;
  bool reached_t_max_ = false;
};

/// Integrate lambda' = -(omega_d / alpha_d^2) / r0(lambda)^{2d} from
/// lambda(0) = lambda0 down to extinction or t_max. The left value r0(lambda-)
/// drives each stretch between piece boundaries; crossings are located by
/// bisection and the speed switches there. Piecewise-constant r0 integrates as
/// exact linear segments. Throws std::domain_error for the open case
/// r0(lambda0-) = 0 unless params.exploratory is set, in which case the start
/// level is shifted down by lambda0 * exploratory_offset.
Trajectory integrate_erosion(const RadiusProfile& base, double lambda0,
                             const OdeParams& params,
                             const DimensionalConstants& consts);

/// Extinction time of the flow, to event tolerance.
double vanish_time(const RadiusProfile& base, double lambda0,
                   const OdeParams& params, const DimensionalConstants& consts);

/// Flow snapshot u_t = min(u0, lambda(t)), i.e. the truncation at lambda_t.
RadiusProfile snapshot(const RadiusProfile& base, double lambda_t);

/// Open-case exploration (r0(lambda0-) = 0): integrate from lambda0 - eps for
/// each eps in the ladder lambda0 * {offset, offset/2, offset/4, ...}. The
/// family is reported as-is; no convergence claim is attached.
std::vector<Trajectory> integrate_exploratory(const RadiusProfile& base,
                                              double lambda0, const OdeParams& params,
                                              const DimensionalConstants& consts,
                                              int ladder_size = 4);

}  // namespace erosion
