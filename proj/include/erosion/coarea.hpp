#pragma once

#include <array>
#include <optional>
#include <vector>

#include "erosion/constants.hpp"
#include "erosion/numeric.hpp"
#include "erosion/profile.hpp"

namespace erosion {

/// Dense polynomial, ascending coefficients.
struct Poly {
  std::vector<double> c;

  double operator()(double x) const;
  Poly derivative() const;
  Poly antiderivative(double constant_term) const;
  Poly scaled(double k) const;
  Poly plus(const Poly& other) const;
  static Poly mul(const Poly& a, const Poly& b);
  /// p(a0 + a1 * x) expanded in powers of x.
  static Poly compose_affine(const Poly& p, double a0, double a1);
};

/// Boundary data of the C^2 decreasing bridge on [0, 1] with f(0) = 1,
/// f(1) = 0, f'(0) = slope_left, f'(1) = slope_right, f''(0) = curv_left,
/// f''(1) = curv_right, together with the constructed cubic edge polynomials
/// and the bump mass A = 1 + (a+b) eps/2 + (alpha-beta) eps^2/12.
struct ReattachmentSpec {
  double slope_left;   // a < 0
  double slope_right;  // b < 0
  double curv_left;    // alpha
  double curv_right;   // beta
  double epsilon;      // junction width
  Poly p_poly;         // P, negative on [0, eps)
  Poly q_poly;         // Q, negative on (1-eps, 1]
  double bump_mass;    // A > 0

  /// Derives the polynomials and the bump mass. When eps is not given, takes
  /// half the admissible maximum min(1/2, 3|a|/|alpha|, 3|b|/|beta|) and
  /// halves it until the bump mass is positive. Throws std::domain_error when
  /// no admissible width exists.
  static ReattachmentSpec make(double slope_left, double slope_right,
                               double curv_left, double curv_right,
                               std::optional<double> eps = std::nullopt);
};

/// The bridge f = f0 - A * int phi as three polynomial segments over
/// [0, eps], [eps, 1-eps], [1-eps, 1], where f0 = 1 + int g with g the C^1
/// glue (P, 0, Q) and phi(s) = 30 s^2 (1-s)^2.
class Reattachment {
 public:
  struct Segment {
    double s_lo, s_hi;
    Poly f;
  };

  explicit Reattachment(const ReattachmentSpec& spec);

  const ReattachmentSpec& spec() const { return spec_; }
  const std::array<Segment, 3>& segments() const { return segments_; }

  double value(double s) const;
  double derivative(double s) const;
  double second_derivative(double s) const;

 private:
  const Segment& segment_at(double s) const;
  ReattachmentSpec spec_;
  std::array<Segment, 3> segments_;
};

Reattachment reattach(const ReattachmentSpec& spec);

/// Profile pieces of the rescaled bridge joining value v0 at t0 to value v1
/// at t1 with prescribed derivatives d0, d1 (< 0) and second derivatives
/// s0, s1. Requires v0 > v1.
std::vector<Piece> bridge_pieces(double t0, double t1, double v0, double v1,
                                 double d0, double d1, double s0, double s1);

/// Parameters of the regularizing sequence from the coarea construction.
struct MollificationParams {
  int n;             // regularization index
  double q;          // tail exponent, 0 < q < min(1, 1/(2 p*))
  double extension;  // R, the value extending r left of 0; r(0) < R < R0
  double p_star;     // |d-1-p| if d-1-p < 0, else 1
  int resolution = 4096;  // convolution grid points per unit of n

  static MollificationParams make(int n, double q, double extension, double p,
                                  const DimensionalConstants& consts);

  double b_n(double b) const { return b + 1.0 / n; }
  double c_n(double b) const;
  double a_n() const;
  /// Smallest n for which b_n < c_n < b_n + 1/n and a_n < 1/n.
  int min_index() const;
};

/// The mollifier rho(s) = 140 s^3 (1-s)^3 on [0, 1] and derivatives.
double mollifier(double s);
double mollifier_derivative(double s);
double mollifier_second(double s);

/// Convolution r~_n(t) = int_0^1 r(t - s/n) rho(s) ds with r extended by R
/// left of 0 and by 0 right of the support; valid for any real t. The
/// derivative variants differentiate the kernel.
double mollified_value(const RadiusProfile& base, const MollificationParams& mp,
                       double t);
double mollified_derivative(const RadiusProfile& base, const MollificationParams& mp,
                            double t);
double mollified_second(const RadiusProfile& base, const MollificationParams& mp,
                        double t);

/// Sampled profile of r~_n on a uniform grid over [0, b_n]. Non-increasing,
/// bounded by R, exactly zero at b_n.
RadiusProfile mollify(const RadiusProfile& base, const MollificationParams& mp);

/// The full regularized profile r_n: the t^q cap near 0, a C^2 bridge, the
/// rescaled convolution R - h_n (R - r~_n) on [1/n, b_n], a second bridge,
/// and the (b + 2/n - t)^q tail. Support ends exactly at b + 2/n. Throws
/// std::domain_error for n below the admissible threshold.
RadiusProfile build_regularized(const RadiusProfile& base,
                                const MollificationParams& mp);

struct CoareaRow {
  int n;
  double q;
  ExtendedValue energy;  // W_p(v_n)
  ExtendedValue target;  // omega_d int_0^b r^{d-1-p}
  double rel_error;
  double l1_gap;  // || v_n - v ||_L1
};

struct CoareaReport {
  std::vector<CoareaRow> rows;
  // Monotone structure of the energy column (meaningful when d-1-p < 0).
  bool energy_monotone = true;
};

/// Numerical realization of the coarea limit: per-n energies of the
/// constructed sequence against the coarea integral of the base profile.
CoareaReport coarea_report(const RadiusProfile& base, const std::vector<int>& n_values,
                           double q, double p, double extension,
                           const DimensionalConstants& consts);

}  // namespace erosion
