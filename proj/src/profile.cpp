#include "erosion/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace erosion {

namespace {

constexpr int kValidationSamplesPerPiece = 4096;
// Slack for monotonicity checks; absorbs rounding of pow() and of the
// quadrature that produces sampled pieces.
constexpr double kMonotoneSlack = 1e-10;

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

double horner_derivative(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + static_cast<double>(i) * c[i];
  return acc;
}

[[noreturn]] void bad_profile(const std::string& what) {
  throw std::domain_error("RadiusProfile: " + what);
}

}  // namespace

Piece Piece::constant(double t_lo, double t_hi, double v) {
  Piece p;
  p.kind = PieceKind::kConstant;
  p.t_lo = t_lo;
  p.t_hi = t_hi;
  p.a0 = v;
  return p;
}

Piece Piece::power_of_linear(double t_lo, double t_hi, double c, double beta, double q) {
  Piece p;
  p.kind = PieceKind::kPowerOfLinear;
  p.t_lo = t_lo;
  p.t_hi = t_hi;
  p.a0 = c;
  p.a1 = beta;
  p.a2 = q;
  return p;
}

Piece Piece::offset_minus_power(double t_lo, double t_hi, double C, double D,
                                double t0, double q) {
  Piece p;
  p.kind = PieceKind::kOffsetMinusPower;
  p.t_lo = t_lo;
  p.t_hi = t_hi;
  p.a0 = C;
  p.a1 = D;
  p.a2 = t0;
  p.a3 = q;
  return p;
}

Piece Piece::polynomial(double t_lo, double t_hi, std::vector<double> coeffs) {
  Piece p;
  p.kind = PieceKind::kPolynomial;
  p.t_lo = t_lo;
  p.t_hi = t_hi;
  p.data = std::move(coeffs);
  return p;
}

Piece Piece::sampled(double t_lo, double t_hi, std::vector<double> values) {
  Piece p;
  p.kind = PieceKind::kSampled;
  p.t_lo = t_lo;
  p.t_hi = t_hi;
  p.data = std::move(values);
  return p;
}

double Piece::value(double t) const {
  switch (kind) {
    case PieceKind::kConstant:
      return a0;
    case PieceKind::kPowerOfLinear: {
      const double base = a1 - t;
      return a0 * std::pow(std::max(base, 0.0), a2);
    }
    case PieceKind::kOffsetMinusPower: {
      const double base = t - a2;
      return a0 - a1 * std::pow(std::max(base, 0.0), a3);
    }
    case PieceKind::kPolynomial:
      return horner(data, t - t_lo);
    case PieceKind::kSampled: {
      const std::size_t cells = data.size() - 1;
      const double h = (t_hi - t_lo) / static_cast<double>(cells);
      double x = (t - t_lo) / h;
      if (x <= 0.0) return data.front();
      if (x >= static_cast<double>(cells)) return data.back();
      const auto i = static_cast<std::size_t>(x);
      const double frac = x - static_cast<double>(i);
      return data[i] + frac * (data[i + 1] - data[i]);
    }
  }
  return 0.0;
}

double Piece::derivative(double t) const {
  switch (kind) {
    case PieceKind::kConstant:
      return 0.0;
    case PieceKind::kPowerOfLinear: {
      const double base = std::max(a1 - t, 0.0);
      return -a0 * a2 * std::pow(base, a2 - 1.0);
    }
    case PieceKind::kOffsetMinusPower: {
      const double base = std::max(t - a2, 0.0);
      return -a1 * a3 * std::pow(base, a3 - 1.0);
    }
    case PieceKind::kPolynomial:
      return horner_derivative(data, t - t_lo);
    case PieceKind::kSampled: {
      const std::size_t cells = data.size() - 1;
      const double h = (t_hi - t_lo) / static_cast<double>(cells);
      double x = (t - t_lo) / h;
      std::size_t i = 0;
      if (x > 0.0) i = std::min(static_cast<std::size_t>(x), cells - 1);
      return (data[i + 1] - data[i]) / h;
    }
  }
  return 0.0;
}

RadiusProfile RadiusProfile::from_pieces(std::vector<Piece> pieces,
                                         double enclosing_radius) {
  if (!(enclosing_radius > 0.0)) bad_profile("enclosing radius must be positive");
  RadiusProfile r;
  r.enclosing_ = enclosing_radius;
  if (pieces.empty()) return r;

  if (pieces.front().t_lo != 0.0) bad_profile("pieces must start at t = 0");
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    if (!(p.t_hi > p.t_lo)) bad_profile("piece interval is empty or inverted");
    if (i + 1 < pieces.size() && pieces[i + 1].t_lo != p.t_hi) {
      bad_profile("pieces must tile [0, a) without gaps or overlaps");
    }
    switch (p.kind) {
      case PieceKind::kConstant:
        if (!(p.a0 > 0.0)) bad_profile("constant piece must be positive");
        break;
      case PieceKind::kPowerOfLinear:
        if (!(p.a0 > 0.0)) bad_profile("power-of-linear factor must be positive");
        if (!(p.a2 > 0.0)) bad_profile("power-of-linear exponent must be positive");
        if (!(p.a1 >= p.t_hi)) bad_profile("power-of-linear root precedes piece end");
        break;
      case PieceKind::kOffsetMinusPower:
        if (!(p.a3 > 0.0)) bad_profile("offset-minus-power exponent must be positive");
        if (!(p.a1 >= 0.0)) bad_profile("offset-minus-power slope factor must be >= 0");
        if (!(p.a2 <= p.t_lo)) bad_profile("offset-minus-power origin inside piece");
        break;
      case PieceKind::kPolynomial:
        if (p.data.empty()) bad_profile("polynomial piece has no coefficients");
        break;
      case PieceKind::kSampled:
        if (p.data.size() < 2) bad_profile("sampled piece needs at least two nodes");
        break;
    }
  }

  const double scale = std::max(1.0, pieces.front().value(0.0));
  const double slack = kMonotoneSlack * scale;
  double prev = pieces.front().value(0.0);
  const double support = pieces.back().t_hi;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const Piece& p = pieces[i];
    const bool last = (i + 1 == pieces.size());
    if (p.kind == PieceKind::kSampled) {
      // Every node is checked; linear interpolation is monotone iff they are.
      const std::size_t cells = p.data.size() - 1;
      const double h = (p.t_hi - p.t_lo) / static_cast<double>(cells);
      for (std::size_t j = 0; j < p.data.size(); ++j) {
        const double v = p.data[j];
        if (v > prev + slack) bad_profile("radius must be non-increasing");
        const bool at_support_end = last && j == cells;
        if (!(v > 0.0) && !at_support_end) bad_profile("radius must be positive below a");
        if (v < 0.0) bad_profile("radius must be non-negative");
        prev = std::min(prev, v);
        (void)h;
      }
    } else {
      for (int j = 0; j <= kValidationSamplesPerPiece; ++j) {
        const double t =
            p.t_lo + (p.t_hi - p.t_lo) * (static_cast<double>(j) /
                                          kValidationSamplesPerPiece);
        const double v = p.value(t);
        if (v > prev + slack) bad_profile("radius must be non-increasing");
        const bool at_support_end = last && j == kValidationSamplesPerPiece;
        if (!(v > 0.0) && !at_support_end) bad_profile("radius must be positive below a");
        if (v < 0.0) bad_profile("radius must be non-negative");
        prev = std::min(prev, v);
      }
    }
  }
  if (!(pieces.front().value(0.0) < enclosing_radius)) {
    bad_profile("r(0) must be smaller than the enclosing radius");
  }

  r.pieces_ = std::move(pieces);
  r.support_ = support;
  return r;
}

RadiusProfile RadiusProfile::zero(double enclosing_radius) {
  return from_pieces({}, enclosing_radius);
}

RadiusProfile RadiusProfile::constant(double value, double support,
                                      double enclosing_radius) {
  if (!(support > 0.0)) return zero(enclosing_radius);
  return from_pieces({Piece::constant(0.0, support, value)}, enclosing_radius);
}

RadiusProfile RadiusProfile::step(const std::vector<std::pair<double, double>>& levels,
                                  double enclosing_radius) {
  std::vector<Piece> pieces;
  double lo = 0.0;
  for (const auto& [hi, v] : levels) {
    pieces.push_back(Piece::constant(lo, hi, v));
    lo = hi;
  }
  return from_pieces(std::move(pieces), enclosing_radius);
}

namespace {

// Index of the piece owning t under the left-continuous convention: the piece
// with t_lo < t <= t_hi. Requires 0 < t <= a.
std::size_t piece_at_left(const std::vector<Piece>& pieces, double t) {
  std::size_t lo = 0, hi = pieces.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (t <= pieces[mid].t_hi) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

// Index of the piece with t_lo <= t < t_hi. Requires 0 <= t < a.
std::size_t piece_at_right(const std::vector<Piece>& pieces, double t) {
  std::size_t lo = 0, hi = pieces.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (t < pieces[mid].t_hi) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

}  // namespace

double RadiusProfile::value(double t) const {
  if (t < 0.0) bad_profile("evaluation at negative height");
  if (t >= support_ || pieces_.empty()) return 0.0;
  if (t == 0.0) return pieces_.front().value(0.0);
  return pieces_[piece_at_left(pieces_, t)].value(t);
}

double RadiusProfile::left_limit(double t) const {
  if (t < 0.0) bad_profile("evaluation at negative height");
  if (pieces_.empty() || t > support_) return 0.0;
  if (t == 0.0) return pieces_.front().value(0.0);
  return pieces_[piece_at_left(pieces_, t)].value(t);
}

double RadiusProfile::right_limit(double t) const {
  if (t < 0.0) bad_profile("evaluation at negative height");
  if (t >= support_ || pieces_.empty()) return 0.0;
  return pieces_[piece_at_right(pieces_, t)].value(t);
}

std::vector<Jump> RadiusProfile::jump_set() const {
  std::vector<Jump> jumps;
  for (std::size_t i = 0; i < pieces_.size(); ++i) {
    const double t = pieces_[i].t_hi;
    const double left = pieces_[i].value(t);
    const double right = (i + 1 < pieces_.size()) ? pieces_[i + 1].value(t) : 0.0;
    if (left > right) jumps.push_back(Jump{t, left, right});
  }
  return jumps;
}

RadiusProfile RadiusProfile::truncated(double lambda, bool* clamped) const {
  if (clamped) *clamped = false;
  if (lambda < 0.0) {
    if (clamped) *clamped = true;
    lambda = 0.0;
  }
  if (lambda > support_) {
    if (clamped) *clamped = true;
    lambda = support_;
  }
  if (lambda == support_) return *this;
  if (lambda == 0.0) return zero(enclosing_);

  std::vector<Piece> kept;
  for (const Piece& p : pieces_) {
    if (p.t_hi <= lambda) {
      kept.push_back(p);
      continue;
    }
    if (p.t_lo >= lambda) break;
    Piece cut = p;
    cut.t_hi = lambda;
    if (p.kind == PieceKind::kSampled) {
      // Resample onto a uniform grid over the shortened interval.
      const std::size_t cells = p.data.size() - 1;
      const double h = (p.t_hi - p.t_lo) / static_cast<double>(cells);
      const auto n = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil((lambda - p.t_lo) / h)));
      std::vector<double> vals(n + 1);
      for (std::size_t j = 0; j <= n; ++j) {
        const double t = p.t_lo + (lambda - p.t_lo) * (static_cast<double>(j) /
                                                       static_cast<double>(n));
        vals[j] = p.value(t);
      }
      cut.data = std::move(vals);
    }
    kept.push_back(std::move(cut));
    break;
  }
  return from_pieces(std::move(kept), enclosing_);
}

RadiusProfile RadiusProfile::dilated(double c) const {
  if (!(c > 0.0)) bad_profile("dilation factor must be positive");
  if (pieces_.empty()) return *this;
  if (!(c * pieces_.front().value(0.0) < enclosing_)) {
    bad_profile("dilated profile escapes the enclosing ball");
  }
  std::vector<Piece> scaled = pieces_;
  for (Piece& p : scaled) {
    switch (p.kind) {
      case PieceKind::kConstant:
      case PieceKind::kPowerOfLinear:
        p.a0 *= c;
        break;
      case PieceKind::kOffsetMinusPower:
        p.a0 *= c;
        p.a1 *= c;
        break;
      case PieceKind::kPolynomial:
      case PieceKind::kSampled:
        for (double& v : p.data) v *= c;
        break;
    }
  }
  return from_pieces(std::move(scaled), enclosing_);
}

namespace {

// Integral of (A + B*u)^e over u in [0, w], the linear-cell primitive used by
// sampled pieces. Values are 0 only at cell ends.
ExtendedValue linear_cell_power_integral(double A, double B, double w, double e) {
  if (w <= 0.0) return ExtendedValue::finite(0.0);
  if (B == 0.0) {
    if (A <= 0.0) {
      return e < 0.0 ? ExtendedValue::infinity() : ExtendedValue::finite(0.0);
    }
    return ExtendedValue::finite(std::pow(A, e) * w);
  }
  const double v0 = A;
  const double v1 = A + B * w;
  if (v0 <= 0.0 || v1 <= 0.0) {
    // An endpoint touches zero; improper there.
    if (e <= -1.0) return ExtendedValue::infinity();
    if (v0 < 0.0 || v1 < 0.0) {
      throw std::domain_error("linear cell dips below zero");
    }
  }
  if (e == -1.0) {
    return ExtendedValue::finite((std::log(v1) - std::log(v0)) / B);
  }
  const double num = std::pow(v1, e + 1.0) - std::pow(v0, e + 1.0);
  return ExtendedValue::finite(num / (B * (e + 1.0)));
}

// Integral of piece^e over [x0, x1] within the piece interval.
ExtendedValue piece_power_integral(const Piece& p, double e, double x0, double x1) {
  if (!(x1 > x0)) return ExtendedValue::finite(0.0);
  switch (p.kind) {
    case PieceKind::kConstant:
      return ExtendedValue::finite(std::pow(p.a0, e) * (x1 - x0));
    case PieceKind::kPowerOfLinear: {
      // c^e * (beta - t)^(q e); improper when x1 hits beta.
      const double E = p.a2 * e;
      const double ce = std::pow(p.a0, e);
      const double b0 = p.a1 - x0;
      const double b1 = p.a1 - x1;
      if (b1 <= 0.0 && E <= -1.0) return ExtendedValue::infinity();
      if (E == -1.0) {
        return ExtendedValue::finite(ce * std::log(b0 / b1));
      }
      const double num = std::pow(b0, E + 1.0) - std::pow(std::max(b1, 0.0), E + 1.0);
      return ExtendedValue::finite(ce * num / (E + 1.0));
    }
    case PieceKind::kSampled: {
      const std::size_t cells = p.data.size() - 1;
      const double h = (p.t_hi - p.t_lo) / static_cast<double>(cells);
      const auto first = static_cast<std::size_t>(
          std::max(0.0, std::floor((x0 - p.t_lo) / h)));
      ExtendedValue total = ExtendedValue::finite(0.0);
      for (std::size_t i = first; i < cells; ++i) {
        const double c_lo = p.t_lo + static_cast<double>(i) * h;
        const double c_hi = (i + 1 == cells) ? p.t_hi : c_lo + h;
        const double lo = std::max(x0, c_lo);
        const double hi = std::min(x1, c_hi);
        if (hi <= lo) {
          if (c_lo >= x1) break;
          continue;
        }
        const double slope = (p.data[i + 1] - p.data[i]) / h;
        const double A = p.data[i] + slope * (lo - c_lo);
        total += linear_cell_power_integral(A, slope, hi - lo, e);
        if (total.is_infinite()) return total;
      }
      return total;
    }
    case PieceKind::kOffsetMinusPower:
    case PieceKind::kPolynomial: {
      auto f = [&p, e](double t) { return std::pow(p.value(t), e); };
      return ExtendedValue::finite(adaptive_simpson(f, x0, x1));
    }
  }
  return ExtendedValue::finite(0.0);
}

}  // namespace

ExtendedValue integral_power(const RadiusProfile& r, double exponent, double lo,
                             double hi) {
  if (!(lo <= hi)) throw std::domain_error("integral_power: lo > hi");
  lo = std::max(lo, 0.0);
  hi = std::max(hi, 0.0);
  const double a = r.support_length();
  const double hi_eff = std::min(hi, a);
  if (exponent < 0.0 && hi > a && lo < hi) {
    // r == 0 on a set of positive measure inside [lo, hi].
    if (hi > a || lo >= a) return ExtendedValue::infinity();
  }
  if (exponent == 0.0) {
    // Support convention: r^0 = 1 exactly where r > 0.
    return ExtendedValue::finite(std::max(0.0, hi_eff - lo));
  }
  if (hi_eff <= lo) return ExtendedValue::finite(0.0);
  ExtendedValue total = ExtendedValue::finite(0.0);
  for (const Piece& p : r.pieces()) {
    const double x0 = std::max(lo, p.t_lo);
    const double x1 = std::min(hi_eff, p.t_hi);
    if (x1 <= x0) continue;
    total += piece_power_integral(p, exponent, x0, x1);
    if (total.is_infinite()) return total;
  }
  return total;
}

namespace {

// Points where either profile changes analytic piece, restricted to [0, hi].
std::vector<double> merged_breakpoints(const RadiusProfile& u,
                                       const RadiusProfile& v, double hi) {
  std::vector<double> pts{0.0, hi};
  for (const auto& prof : {&u, &v}) {
    for (const Piece& p : prof->pieces()) {
      if (p.t_hi < hi) pts.push_back(p.t_hi);
      if (p.t_lo > 0.0 && p.t_lo < hi) pts.push_back(p.t_lo);
    }
    if (prof->support_length() < hi) pts.push_back(prof->support_length());
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

double l1_distance(const RadiusProfile& u, const RadiusProfile& v,
                   const DimensionalConstants& consts) {
  const double d = static_cast<double>(consts.dim);
  const double hi = std::max(u.support_length(), v.support_length());
  if (hi == 0.0) return 0.0;

  auto g = [&](double t) {
    return std::pow(u.value(t), d) - std::pow(v.value(t), d);
  };
  auto signed_piece = [&](double x0, double x1) {
    const double iu = integral_power(u, d, x0, x1).value();
    const double iv = integral_power(v, d, x0, x1).value();
    return std::abs(iu - iv);
  };

  const std::vector<double> pts = merged_breakpoints(u, v, hi);
  double total = 0.0;
  constexpr int kProbes = 33;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double x0 = pts[i];
    const double x1 = pts[i + 1];
    // Locate sign changes of r_u^d - r_v^d by sampling, then bisection.
    double cuts[kProbes + 2];
    std::size_t n_cuts = 0;
    cuts[n_cuts++] = x0;
    double t_prev = x0 + (x1 - x0) / (2.0 * kProbes);
    double g_prev = g(t_prev);
    for (int j = 1; j < kProbes; ++j) {
      const double t = x0 + (x1 - x0) * (2.0 * j + 1.0) / (2.0 * kProbes);
      const double g_here = g(t);
      if ((g_prev < 0.0 && g_here > 0.0) || (g_prev > 0.0 && g_here < 0.0)) {
        double lo = t_prev, hi_b = t, g_lo = g_prev;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi_b);
          const double g_mid = g(mid);
          if ((g_lo < 0.0) == (g_mid < 0.0)) {
            lo = mid;
            g_lo = g_mid;
          } else {
            hi_b = mid;
          }
        }
        cuts[n_cuts++] = 0.5 * (lo + hi_b);
      }
      t_prev = t;
      g_prev = g_here;
    }
    cuts[n_cuts++] = x1;
    for (std::size_t j = 0; j + 1 < n_cuts; ++j) {
      total += signed_piece(cuts[j], cuts[j + 1]);
    }
  }
  return consts.unit_ball_volume * total;
}

double radial_value(const RadiusProfile& r, double rho) {
  if (rho < 0.0) throw std::domain_error("radial_value: negative radius");
  const double a = r.support_length();
  if (a == 0.0) return 0.0;
  if (rho == 0.0) return a;
  if (rho > r.value(0.0)) return 0.0;
  // value() is left-continuous and non-increasing, so {t | r(t) >= rho} is an
  // interval starting at 0; bisect for its supremum.
  double lo = 0.0, hi = a;
  if (r.value(a) >= rho) return a;
  for (int i = 0; i < 80 && hi - lo > 1e-16 * a; ++i) {
    const double mid = 0.5 * (lo + hi);
    (r.value(mid) >= rho ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace erosion
