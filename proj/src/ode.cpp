#include "erosion/ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "erosion/numeric.hpp"
#include "erosion/scheme.hpp"

namespace erosion {

SpeedBracket erosion_speed(const RadiusProfile& base, double lambda,
                           const DimensionalConstants& consts) {
  if (!(lambda > 0.0) || lambda > base.support_length()) {
    throw std::domain_error("erosion_speed: lambda outside (0, a]");
  }
  const double d2 = 2.0 * static_cast<double>(consts.dim);
  const double c0 = consts.unit_sphere_area /
                    (consts.unit_ball_volume * consts.unit_ball_volume);
  const double r_minus = base.left_limit(lambda);
  const double r_plus = base.right_limit(lambda);
  const double upper = r_minus > 0.0
                           ? -c0 / std::pow(r_minus, d2)
                           : -std::numeric_limits<double>::infinity();
  const double lower = r_plus > 0.0 ? -c0 / std::pow(r_plus, d2)
                                    : -std::numeric_limits<double>::infinity();
  return SpeedBracket{lower, upper};
}

double Trajectory::value(double t) const {
  if (t < 0.0) throw std::domain_error("Trajectory::value: negative time");
  if (nodes_.empty()) return 0.0;
  if (t <= nodes_.front().t) return nodes_.front().lambda;
  if (t >= nodes_.back().t) {
    return vanish_time_ ? 0.0 : nodes_.back().lambda;
  }
  std::size_t lo = 0, hi = nodes_.size() - 1;
  while (lo + 1 < hi) {
    const std::size_t mid = (lo + hi) / 2;
    (nodes_[mid].t <= t ? lo : hi) = mid;
  }
  const Node& n0 = nodes_[lo];
  const Node& n1 = nodes_[hi];
  const double h = n1.t - n0.t;
  if (h <= 0.0) return n1.lambda;
  const double s = (t - n0.t) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double v = (2.0 * s3 - 3.0 * s2 + 1.0) * n0.lambda +
                   (s3 - 2.0 * s2 + s) * h * n0.slope_out +
                   (-2.0 * s3 + 3.0 * s2) * n1.lambda +
                   (s3 - s2) * h * n1.slope_in;
  // The exact solution is monotone between nodes; clamp interpolation wiggle.
  return std::clamp(v, n1.lambda, n0.lambda);
}

namespace {

// Level speed under one analytic piece of the radius function.
class SegmentSpeed {
 public:
  SegmentSpeed(const Piece& piece, double c0, double two_d)
      : piece_(&piece), c0_(c0), two_d_(two_d) {}

  double operator()(double lambda) const {
    const double r = piece_->value(lambda);
    if (!(r > 0.0)) return -std::numeric_limits<double>::infinity();
    return -c0_ / std::pow(r, two_d_);
  }

 private:
  const Piece* piece_;
  double c0_;
  double two_d_;
};

double rk4_step(const SegmentSpeed& speed, double y, double h) {
  const double k1 = speed(y);
  const double k2 = speed(y + 0.5 * h * k1);
  const double k3 = speed(y + 0.5 * h * k2);
  const double k4 = speed(y + h * k3);
  return y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// Step length h* in (0, h] with lambda(h*) == target, by bisection. The caller
// guarantees rk4(h) <= target < lambda.
double locate_event(const SegmentSpeed& speed, double lambda, double h,
                    double target, double event_tol) {
  double h_lo = 0.0, h_hi = h;
  for (int it = 0; it < 200; ++it) {
    const double hm = 0.5 * (h_lo + h_hi);
    const double ym = rk4_step(speed, lambda, hm);
    if (std::abs(ym - target) <= event_tol || h_hi - h_lo <= 1e-17 * (1.0 + h)) {
      return hm;
    }
    (ym > target ? h_lo : h_hi) = hm;
  }
  return 0.5 * (h_lo + h_hi);
}

}  // namespace

Trajectory integrate_erosion(const RadiusProfile& base, double lambda0,
                             const OdeParams& params,
                             const DimensionalConstants& consts) {
  if (!(params.step_tol > 0.0) || !(params.event_tol > 0.0) || !(params.t_max > 0.0)) {
    throw std::domain_error("integrate_erosion: parameters must be positive");
  }
  const double a = base.support_length();
  if (!(lambda0 > 0.0) || lambda0 > a) {
    throw std::domain_error("integrate_erosion: lambda0 outside (0, a]");
  }
  if (!(base.left_limit(lambda0) > 0.0)) {
    if (!params.exploratory) {
      throw std::domain_error(
          "integrate_erosion: r0(lambda0-) = 0 (open case); enable exploratory mode");
    }
    lambda0 *= 1.0 - params.exploratory_offset;
    if (!(lambda0 > 0.0) || !(base.left_limit(lambda0) > 0.0)) {
      throw std::domain_error(
          "integrate_erosion: profile vanishes at the shifted start level");
    }
  }

  const double c0 = consts.unit_sphere_area /
                    (consts.unit_ball_volume * consts.unit_ball_volume);
  const double two_d = 2.0 * static_cast<double>(consts.dim);
  const auto& pieces = base.pieces();
  // Node spacing cap keeps the Hermite dense output accurate on smooth pieces.
  const double h_cap = stopping_bound(base, consts) / 256.0;

  // Piece owning the level under the left-continuous convention
  // (t_lo < lambda <= t_hi).
  auto piece_index = [&](double level) {
    std::size_t lo = 0, hi = pieces.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (level <= pieces[mid].t_hi) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  };

  Trajectory traj;
  double t = 0.0;
  double lambda = lambda0;
  {
    const SegmentSpeed s0(pieces[piece_index(lambda)], c0, two_d);
    traj.nodes_.push_back({0.0, lambda, s0(lambda), s0(lambda)});
  }

  constexpr std::size_t kMaxNodes = 1 << 22;
  while (lambda > 0.0 && t < params.t_max) {
    const Piece& piece = pieces[piece_index(lambda)];
    const double floor_level = piece.t_lo;
    const SegmentSpeed speed(piece, c0, two_d);
    // Entering a new segment: the outgoing slope at the last node follows the
    // segment below the jump.
    traj.nodes_.back().slope_out = speed(lambda);

    if (piece.kind == PieceKind::kConstant) {
      // Constant radius: constant speed, exact linear segment.
      const double w = speed(lambda);
      const double dt = (lambda - floor_level) / (-w);
      if (t + dt > params.t_max) {
        const double h = params.t_max - t;
        lambda += h * w;
        t = params.t_max;
        traj.nodes_.push_back({t, lambda, w, w});
        break;
      }
      t += dt;
      lambda = floor_level;
      traj.nodes_.push_back({t, lambda, w, w});
    } else {
      // Adaptive 4-stage stepping with step doubling; boundary crossings
      // located by bisection on the step length.
      double h = std::min({(lambda - floor_level) / (8.0 * -speed(lambda)), h_cap,
                           params.t_max - t});
      bool segment_done = false;
      while (!segment_done) {
        if (traj.nodes_.size() >= kMaxNodes) {
          throw numeric_error("integrate_erosion: node budget exhausted", t);
        }
        h = std::min({h, h_cap, params.t_max - t});
        const double k1 = speed(lambda);
        double step = h;
        double y_next;
        for (int attempt = 0;; ++attempt) {
          const double y_big = rk4_step(speed, lambda, step);
          const double y_mid = rk4_step(speed, lambda, 0.5 * step);
          const double y_two = rk4_step(speed, y_mid, 0.5 * step);
          const double delta = y_two - y_big;
          const double tol =
              params.step_tol * (std::abs(lambda) + std::abs(step * k1) + 1e-30);
          if (std::abs(delta) <= tol || attempt >= 60) {
            y_next = y_two + delta / 15.0;
            const double grow =
                delta != 0.0 ? 0.9 * std::pow(tol / std::abs(delta), 0.2) : 5.0;
            h = step * std::clamp(grow, 0.2, 5.0);
            break;
          }
          step *= std::max(0.1, 0.9 * std::pow(tol / std::abs(delta), 0.25));
        }

        if (y_next <= floor_level) {
          const double h_event =
              locate_event(speed, lambda, step, floor_level, params.event_tol);
          const double slope_at = speed(floor_level);
          t += h_event;
          lambda = floor_level;
          traj.nodes_.push_back({t, lambda, slope_at, slope_at});
          segment_done = true;
        } else {
          t += step;
          lambda = y_next;
          const double slope_at = speed(lambda);
          traj.nodes_.push_back({t, lambda, slope_at, slope_at});
          if (t >= params.t_max) segment_done = true;
        }
      }
    }
  }

  if (lambda <= 0.0) {
    traj.vanish_time_ = t;
    traj.nodes_.back().lambda = 0.0;
    traj.nodes_.back().slope_out = 0.0;
  } else {
    traj.reached_t_max_ = true;
  }
  return traj;
}

double vanish_time(const RadiusProfile& base, double lambda0,
                   const OdeParams& params, const DimensionalConstants& consts) {
  OdeParams extended = params;
  extended.t_max = std::max(params.t_max, stopping_bound(base, consts) + 1.0);
  const Trajectory traj = integrate_erosion(base, lambda0, extended, consts);
  if (!traj.vanish_time()) {
    throw numeric_error("vanish_time: flow did not reach zero", extended.t_max);
  }
  return *traj.vanish_time();
}

RadiusProfile snapshot(const RadiusProfile& base, double lambda_t) {
  return base.truncated(lambda_t);
}

std::vector<Trajectory> integrate_exploratory(const RadiusProfile& base,
                                              double lambda0, const OdeParams& params,
                                              const DimensionalConstants& consts,
                                              int ladder_size) {
  std::vector<Trajectory> family;
  OdeParams p = params;
  p.exploratory = true;
  for (int i = 0; i < ladder_size; ++i) {
    family.push_back(integrate_erosion(base, lambda0, p, consts));
    p.exploratory_offset *= 0.5;
  }
  return family;
}

}  // namespace erosion
