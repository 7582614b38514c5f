#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "erosion/constants.hpp"
#include "erosion/numeric.hpp"

namespace erosion {

/// One piece of a radius profile on [t_lo, t_hi).
enum class PieceKind {
  kConstant,          // r(t) = v
  kPowerOfLinear,     // r(t) = c * (beta - t)^q
  kOffsetMinusPower,  // r(t) = C - D * (t - t0)^q
  kPolynomial,        // r(t) = sum c_i * (t - t_lo)^i
  kSampled,           // uniform grid on [t_lo, t_hi], linear interpolation
};

struct Piece {
  PieceKind kind;
  double t_lo = 0.0;
  double t_hi = 0.0;
  // kConstant:         a0 = v
  // kPowerOfLinear:    a0 = c, a1 = beta, a2 = q
  // kOffsetMinusPower: a0 = C, a1 = D, a2 = t0, a3 = q
  double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
  std::vector<double> data;  // polynomial coefficients or sample values

  static Piece constant(double t_lo, double t_hi, double v);
  static Piece power_of_linear(double t_lo, double t_hi, double c, double beta, double q);
  static Piece offset_minus_power(double t_lo, double t_hi, double C, double D,
                                  double t0, double q);
  static Piece polynomial(double t_lo, double t_hi, std::vector<double> coeffs);
  static Piece sampled(double t_lo, double t_hi, std::vector<double> values);

  /// Value of the piece function at t. Continuous on [t_lo, t_hi]; evaluating
  /// slightly outside extends the formula (used for event location).
  double value(double t) const;
  double derivative(double t) const;
};

/// A level t where the radius drops: r(t-) > r(t+).
struct Jump {
  double t;
  double left;   // r(t-)
  double right;  // r(t+)
};

/// Non-increasing radius function r with compact support [0, a), the carrier
/// of a radially non-increasing function via {u >= t} = B(0, r(t)).
///
/// The canonical evaluation is left-continuous; one-sided limits are exposed
/// separately. r(t) = 0 for t >= a and r(t) > 0 for t < a. Immutable after
/// construction; every operation is a pure function.
class RadiusProfile {
 public:
  /// Validates tiling of [0, a), monotonicity (4096 samples per piece plus
  /// breakpoints; every node of sampled pieces), positivity below a, and
  /// r(0) < enclosing_radius. Throws std::domain_error on violation.
  static RadiusProfile from_pieces(std::vector<Piece> pieces, double enclosing_radius);

  /// The zero profile (support length 0).
  static RadiusProfile zero(double enclosing_radius);

  /// r == value on [0, support), then 0.
  static RadiusProfile constant(double value, double support, double enclosing_radius);

  /// Step profile from (t_hi, value) breakpoints: value_i on [t_{i-1}, t_i).
  static RadiusProfile step(const std::vector<std::pair<double, double>>& levels,
                            double enclosing_radius);

  double support_length() const { return support_; }      // a
  double enclosing_radius() const { return enclosing_; }  // R0
  const std::vector<Piece>& pieces() const { return pieces_; }
  bool is_zero() const { return pieces_.empty(); }

  /// Left-continuous value: r(t-) for t in (0, a), r(0+) at 0, and 0 for
  /// t >= a (support convention). Throws std::domain_error for t < 0.
  double value(double t) const;
  double left_limit(double t) const;
  double right_limit(double t) const;

  /// All levels t with r(t-) > r(t+), sorted (includes the support end when
  /// r(a-) > 0).
  std::vector<Jump> jump_set() const;

  /// Truncation r * 1_{t < lambda}; encodes u = min(u0, lambda). Lambda
  /// outside [0, a] is clamped and *clamped is set when provided.
  RadiusProfile truncated(double lambda, bool* clamped = nullptr) const;

  /// Spatial dilation r -> c * r. Throws std::domain_error if c <= 0 or the
  /// scaled profile escapes the enclosing ball.
  RadiusProfile dilated(double c) const;

 private:
  RadiusProfile() = default;
  std::vector<Piece> pieces_;
  double support_ = 0.0;
  double enclosing_ = 0.0;
};

/// Integral of r(s)^e over [lo, hi]. Closed form for constant and
/// power-of-linear pieces and for the cells of sampled pieces; adaptive
/// Simpson otherwise. Returns the tagged +infinity when e < 0 and r vanishes
/// non-integrably inside [lo, hi]. By the support convention, r^0 counts only
/// the set where r > 0.
ExtendedValue integral_power(const RadiusProfile& r, double exponent, double lo,
                             double hi);

/// L1 distance between the encoded functions, alpha_d * int |r_u^d - r_v^d|.
double l1_distance(const RadiusProfile& u, const RadiusProfile& v,
                   const DimensionalConstants& consts);

/// The encoded radial function at distance rho from the origin:
/// u(x) = sup{ t | r(t) >= |x| }.
double radial_value(const RadiusProfile& r, double rho);

}  // namespace erosion
