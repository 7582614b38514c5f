#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace erosion {

/// Numeric failure (quadrature or root finding did not converge). Carries the
/// tolerance that was actually reached so callers can report it.
class numeric_error : public std::runtime_error {
 public:
  numeric_error(const std::string& msg, double achieved)
      : std::runtime_error(msg + " [achieved tolerance " +
                           std::to_string(achieved) + "]"),
        achieved_(achieved) {}

  double achieved_tolerance() const { return achieved_; }

 private:
  double achieved_;
};

/// A finite double or a tagged +infinity. Infinite energies are legitimate
/// values here; they compare greater than every finite value and refuse to
/// decay silently into a large double.
class ExtendedValue {
 public:
  ExtendedValue() : v_(0.0), inf_(false) {}

  static ExtendedValue finite(double v) {
    ExtendedValue e;
    e.v_ = v;
    return e;
  }
  static ExtendedValue infinity() {
    ExtendedValue e;
    e.inf_ = true;
    return e;
  }

  bool is_infinite() const { return inf_; }

  /// The finite value. Throws if this is the tagged infinity.
  double value() const {
    if (inf_) throw std::logic_error("ExtendedValue: infinite value accessed as finite");
    return v_;
  }

  /// Explicit lossy view, for printing and plotting only.
  double as_double() const {
    return inf_ ? std::numeric_limits<double>::infinity() : v_;
  }

  ExtendedValue& operator+=(const ExtendedValue& o) {
    inf_ = inf_ || o.inf_;
    v_ += o.v_;
    return *this;
  }
  friend ExtendedValue operator+(ExtendedValue a, const ExtendedValue& b) {
    a += b;
    return a;
  }

  /// Scale by a positive factor (0 * infinity is rejected).
  friend ExtendedValue operator*(double k, const ExtendedValue& e) {
    if (e.inf_) {
      if (!(k > 0.0)) throw std::logic_error("ExtendedValue: non-positive scale of infinity");
      return infinity();
    }
    return finite(k * e.v_);
  }

  friend bool operator==(const ExtendedValue& a, const ExtendedValue& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.v_ == b.v_);
  }
  friend bool operator<(const ExtendedValue& a, const ExtendedValue& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator>(const ExtendedValue& a, const ExtendedValue& b) { return b < a; }
  friend bool operator<=(const ExtendedValue& a, const ExtendedValue& b) { return !(b < a); }
  friend bool operator>=(const ExtendedValue& a, const ExtendedValue& b) { return !(a < b); }

  friend bool operator<(const ExtendedValue& a, double b) { return a < finite(b); }
  friend bool operator>(const ExtendedValue& a, double b) { return a > finite(b); }
  friend bool operator<=(const ExtendedValue& a, double b) { return a <= finite(b); }
  friend bool operator>=(const ExtendedValue& a, double b) { return a >= finite(b); }

 private:
  double v_;
  bool inf_;
};

// Quadrature defaults: integrands are piecewise smooth, so adaptive Simpson
// with a fixed recursion cap is enough.
inline constexpr double kQuadratureRelTol = 1e-10;
inline constexpr int kQuadratureMaxDepth = 40;

namespace detail {

template <class F>
double simpson_recurse(F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double eps, int depth, int max_depth,
                       double& deferred_error) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps || depth >= max_depth) {
    if (std::abs(delta) > 15.0 * eps) deferred_error += std::abs(delta) / 15.0;
    return left + right + delta / 15.0;
  }
  return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * eps, depth + 1,
                         max_depth, deferred_error) +
         simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * eps, depth + 1,
                         max_depth, deferred_error);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [lo, hi]. Throws numeric_error when
/// the recursion cap is reached before the requested tolerance.
template <class F>
double adaptive_simpson(F&& f, double lo, double hi,
                        double rel_tol = kQuadratureRelTol, double abs_tol = 0.0,
                        int max_depth = kQuadratureMaxDepth) {
  if (!(lo <= hi)) throw std::domain_error("adaptive_simpson: lo > hi");
  if (lo == hi) return 0.0;
  const double fa = f(lo);
  const double fb = f(hi);
  const double fm = f(0.5 * (lo + hi));
  const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
  const double eps = std::max(abs_tol, rel_tol * std::abs(whole));
  double deferred = 0.0;
  const double result = detail::simpson_recurse(f, lo, hi, fa, fm, fb, whole,
                                                eps, 0, max_depth, deferred);
  const double budget = std::max({abs_tol, rel_tol * std::abs(result), 1e-300});
  if (deferred > 16.0 * budget) {
    throw numeric_error("adaptive_simpson: recursion cap reached",
                        deferred / std::max(std::abs(result), 1e-300));
  }
  return result;
}

}  // namespace erosion
