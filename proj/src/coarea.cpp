#include "erosion/coarea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "erosion/energy.hpp"

namespace erosion {

double Poly::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
  return acc;
}

Poly Poly::derivative() const {
  if (c.size() <= 1) return Poly{{0.0}};
  Poly d;
  d.c.resize(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) {
    d.c[i - 1] = static_cast<double>(i) * c[i];
  }
  return d;
}

Poly Poly::antiderivative(double constant_term) const {
  Poly s;
  s.c.resize(c.size() + 1);
  s.c[0] = constant_term;
  for (std::size_t i = 0; i < c.size(); ++i) {
    s.c[i + 1] = c[i] / static_cast<double>(i + 1);
  }
  return s;
}

Poly Poly::scaled(double k) const {
  Poly s = *this;
  for (double& v : s.c) v *= k;
  return s;
}

Poly Poly::plus(const Poly& other) const {
  Poly s;
  s.c.resize(std::max(c.size(), other.c.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) s.c[i] += c[i];
  for (std::size_t i = 0; i < other.c.size(); ++i) s.c[i] += other.c[i];
  return s;
}

Poly Poly::mul(const Poly& a, const Poly& b) {
  Poly m;
  m.c.assign(a.c.size() + b.c.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      m.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return m;
}

Poly Poly::compose_affine(const Poly& p, double a0, double a1) {
  // Horner in the affine argument.
  Poly acc{{0.0}};
  const Poly arg{{a0, a1}};
  for (std::size_t i = p.c.size(); i-- > 0;) {
    acc = mul(acc, arg);
    if (acc.c.empty()) acc.c.push_back(0.0);
    acc.c[0] += p.c[i];
  }
  return acc;
}

ReattachmentSpec ReattachmentSpec::make(double slope_left, double slope_right,
                                        double curv_left, double curv_right,
                                        std::optional<double> eps) {
  if (!(slope_left < 0.0) || !(slope_right < 0.0)) {
    throw std::domain_error("ReattachmentSpec: endpoint slopes must be negative");
  }
  double eps_max = 0.5;
  if (curv_left != 0.0) {
    eps_max = std::min(eps_max, 3.0 * std::abs(slope_left) / std::abs(curv_left));
  }
  if (curv_right != 0.0) {
    eps_max = std::min(eps_max, 3.0 * std::abs(slope_right) / std::abs(curv_right));
  }
  auto bump_mass_at = [&](double e) {
    return 1.0 + 0.5 * (slope_left + slope_right) * e +
           (curv_left - curv_right) * e * e / 12.0;
  };

  double e;
  if (eps) {
    e = *eps;
    if (!(e > 0.0) || !(e < eps_max)) {
      throw std::domain_error(
          "ReattachmentSpec: junction width outside (0, " + std::to_string(eps_max) + ")");
    }
    if (!(bump_mass_at(e) > 0.0)) {
      throw std::domain_error("ReattachmentSpec: bump mass not positive at given width");
    }
  } else {
    e = 0.5 * eps_max;
    int guard = 0;
    while (!(bump_mass_at(e) > 0.0)) {
      e *= 0.5;
      if (++guard > 2000) {
        throw std::domain_error(
            "ReattachmentSpec: no admissible junction width (bump mass stays <= 0)");
      }
    }
  }

  ReattachmentSpec spec;
  spec.slope_left = slope_left;
  spec.slope_right = slope_right;
  spec.curv_left = curv_left;
  spec.curv_right = curv_right;
  spec.epsilon = e;
  const double l1 = 3.0 * slope_left / (e * e) + curv_left / e;
  const double m1 = 2.0 * slope_left / (e * e * e) + curv_left / (e * e);
  const double l2 = 3.0 * slope_right / (e * e) - curv_right / e;
  const double m2 = 2.0 * slope_right / (e * e * e) - curv_right / (e * e);
  // P = (l1 + m1 (s - e)) (s - e)^2, Q = (l2 + m2 (1 - e - s)) (1 - e - s)^2.
  const Poly shift_p{{-e, 1.0}};
  const Poly shift_q{{1.0 - e, -1.0}};
  spec.p_poly = Poly::mul(Poly{{l1 - m1 * e, m1}}, Poly::mul(shift_p, shift_p));
  spec.q_poly = Poly::mul(Poly{{l2 + m2 * (1.0 - e), -m2}}, Poly::mul(shift_q, shift_q));
  spec.bump_mass = bump_mass_at(e);
  return spec;
}

Reattachment::Reattachment(const ReattachmentSpec& spec) : spec_(spec) {
  const double e = spec.epsilon;
  const double A = spec.bump_mass;
  // Phi = int_0^s 30 u^2 (1-u)^2 du = 10 s^3 - 15 s^4 + 6 s^5.
  const Poly bump_integral{{0.0, 0.0, 0.0, 10.0 * A, -15.0 * A, 6.0 * A}};

  const Poly p_int = spec.p_poly.antiderivative(1.0);  // 1 + int_0^s P
  const double f0_eps = p_int(e);
  const Poly q_int = spec.q_poly.antiderivative(0.0);
  const double q_int_at = q_int(1.0 - e);

  segments_[0] = Segment{0.0, e, p_int.plus(bump_integral.scaled(-1.0))};
  segments_[1] = Segment{e, 1.0 - e,
                         Poly{{f0_eps}}.plus(bump_integral.scaled(-1.0))};
  segments_[2] = Segment{1.0 - e, 1.0,
                         q_int.plus(Poly{{f0_eps - q_int_at}})
                             .plus(bump_integral.scaled(-1.0))};
}

const Reattachment::Segment& Reattachment::segment_at(double s) const {
  if (s <= segments_[0].s_hi) return segments_[0];
  if (s <= segments_[1].s_hi) return segments_[1];
  return segments_[2];
}

double Reattachment::value(double s) const { return segment_at(s).f(s); }

double Reattachment::derivative(double s) const {
  return segment_at(s).f.derivative()(s);
}

double Reattachment::second_derivative(double s) const {
  return segment_at(s).f.derivative().derivative()(s);
}

Reattachment reattach(const ReattachmentSpec& spec) { return Reattachment(spec); }

std::vector<Piece> bridge_pieces(double t0, double t1, double v0, double v1,
                                 double d0, double d1, double s0, double s1) {
  if (!(t1 > t0)) throw std::domain_error("bridge_pieces: empty interval");
  if (!(v0 > v1)) throw std::domain_error("bridge_pieces: values must decrease");
  const double h = t1 - t0;
  const double drop = v0 - v1;
  const auto spec = ReattachmentSpec::make(d0 * h / drop, d1 * h / drop,
                                           s0 * h * h / drop, s1 * h * h / drop);
  const Reattachment bridge(spec);

  std::vector<Piece> out;
  for (const auto& seg : bridge.segments()) {
    const double p_lo = t0 + seg.s_lo * h;
    const double p_hi = t0 + seg.s_hi * h;
    // v1 + drop * f(s(t)) with s = seg.s_lo + (t - p_lo)/h, in the piece-local
    // variable t - p_lo.
    Poly local = Poly::compose_affine(seg.f, seg.s_lo, 1.0 / h).scaled(drop);
    local.c[0] += v1;
    out.push_back(Piece::polynomial(p_lo, p_hi, local.c));
  }
  return out;
}

MollificationParams MollificationParams::make(int n, double q, double extension,
                                              double p,
                                              const DimensionalConstants& consts) {
  if (n < 1) throw std::domain_error("MollificationParams: n must be >= 1");
  const double e = static_cast<double>(consts.dim) - 1.0 - p;
  const double p_star = e < 0.0 ? -e : 1.0;
  if (!(q > 0.0) || !(q < std::min(1.0, 1.0 / (2.0 * p_star)))) {
    throw std::domain_error(
        "MollificationParams: q must lie in (0, min(1, 1/(2 p*)))");
  }
  if (!(extension > 0.0)) {
    throw std::domain_error("MollificationParams: extension value must be positive");
  }
  MollificationParams mp;
  mp.n = n;
  mp.q = q;
  mp.extension = extension;
  mp.p_star = p_star;
  return mp;
}

double MollificationParams::c_n(double b) const {
  return b + 2.0 / n -
         std::pow(extension / 2.0, 1.0 / q) *
             std::pow(static_cast<double>(n), -1.0 / (2.0 * p_star * q));
}

double MollificationParams::a_n() const {
  return std::pow(1.0 / (2.0 * n), 1.0 / q);
}

int MollificationParams::min_index() const {
  // c_n > b_n requires n^(1/(2 p* q) - 1) > (R/2)^(1/q); the exponent is
  // positive because q < 1/(2 p*). a_n < 1/n holds for every n >= 1.
  const double expo = 1.0 / (2.0 * p_star * q) - 1.0;
  const double rhs = std::pow(extension / 2.0, 1.0 / q);
  int guess = std::max(1, static_cast<int>(std::floor(std::pow(rhs, 1.0 / expo))) + 1);
  auto admissible = [&](int m) {
    MollificationParams probe = *this;
    probe.n = m;
    const double b = 1.0;  // admissibility is independent of b
    return probe.c_n(b) > probe.b_n(b) && probe.a_n() < 1.0 / m;
  };
  while (!admissible(guess)) ++guess;
  while (guess > 1 && admissible(guess - 1)) --guess;
  return guess;
}

double mollifier(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double u = s * (1.0 - s);
  return 140.0 * u * u * u;
}

double mollifier_derivative(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double u = s * (1.0 - s);
  return 420.0 * u * u * (1.0 - 2.0 * s);
}

double mollifier_second(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  return 840.0 * s * (1.0 + s * (-6.0 + s * (10.0 - 5.0 * s)));
}

namespace {

double extended_value(const RadiusProfile& base, double R, double x) {
  return x < 0.0 ? R : base.value(x);
}

// Convolution against a kernel weight w(s) on [0, 1], split at the images of
// the base profile's breakpoints so each panel is smooth.
double convolve(const RadiusProfile& base, const MollificationParams& mp, double t,
                double (*weight)(double), double kernel_scale) {
  const double n = static_cast<double>(mp.n);
  std::vector<double> cuts{0.0, 1.0};
  auto add_cut = [&](double u) {
    const double s = n * (t - u);
    if (s > 0.0 && s < 1.0) cuts.push_back(s);
  };
  add_cut(0.0);
  for (const Piece& p : base.pieces()) {
    add_cut(p.t_lo);
    add_cut(p.t_hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto integrand = [&](double s) {
    return extended_value(base, mp.extension, t - s / n) * weight(s);
  };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    total += adaptive_simpson(integrand, cuts[i], cuts[i + 1], 1e-12, 1e-15);
  }
  return kernel_scale * total;
}

}  // namespace

double mollified_value(const RadiusProfile& base, const MollificationParams& mp,
                       double t) {
  return convolve(base, mp, t, &mollifier, 1.0);
}

double mollified_derivative(const RadiusProfile& base, const MollificationParams& mp,
                            double t) {
  return convolve(base, mp, t, &mollifier_derivative, static_cast<double>(mp.n));
}

double mollified_second(const RadiusProfile& base, const MollificationParams& mp,
                        double t) {
  return convolve(base, mp, t, &mollifier_second,
                  static_cast<double>(mp.n) * static_cast<double>(mp.n));
}

namespace {

// Uniform samples of f over [lo, hi] with a node exactly at hi; spacing close
// to (b + 2) / (resolution * n). Tiny quadrature wiggles are clamped so the
// result is exactly non-increasing.
template <class F>
std::vector<double> sample_monotone(F&& f, double lo, double hi, double span_scale,
                                    const MollificationParams& mp, double value_scale) {
  const double h0 = span_scale / (static_cast<double>(mp.resolution) * mp.n);
  const auto cells = std::max<std::size_t>(
      2, static_cast<std::size_t>(std::ceil((hi - lo) / h0)));
  std::vector<double> values(cells + 1);
  for (std::size_t j = 0; j <= cells; ++j) {
    const double t = lo + (hi - lo) * (static_cast<double>(j) / cells);
    values[j] = f(t);
  }
  for (std::size_t j = 1; j < values.size(); ++j) {
    if (values[j] > values[j - 1] + 1e-9 * value_scale) {
      throw numeric_error("mollification produced a non-monotone sample",
                          values[j] - values[j - 1]);
    }
    values[j] = std::min(values[j], values[j - 1]);
  }
  return values;
}

}  // namespace

RadiusProfile mollify(const RadiusProfile& base, const MollificationParams& mp) {
  if (base.is_zero()) throw std::domain_error("mollify: base profile is zero");
  const double R = mp.extension;
  if (!(base.value(0.0) < R) || !(R < base.enclosing_radius())) {
    throw std::domain_error("mollify: extension must satisfy r(0) < R < R0");
  }
  const double b = base.support_length();
  const double bn = mp.b_n(b);
  auto values = sample_monotone(
      [&](double t) { return mollified_value(base, mp, t); }, 0.0, bn, b + 2.0, mp,
      R);
  values.back() = 0.0;  // exact: the kernel no longer meets the support
  return RadiusProfile::from_pieces({Piece::sampled(0.0, bn, std::move(values))},
                                    base.enclosing_radius());
}

RadiusProfile build_regularized(const RadiusProfile& base,
                                const MollificationParams& mp) {
  if (base.is_zero()) throw std::domain_error("build_regularized: base profile is zero");
  const double R = mp.extension;
  if (!(base.value(0.0) < R) || !(R < base.enclosing_radius())) {
    throw std::domain_error("build_regularized: extension must satisfy r(0) < R < R0");
  }
  const int n_min = mp.min_index();
  if (mp.n < n_min) {
    throw std::domain_error("build_regularized: n below the admissible threshold " +
                            std::to_string(n_min));
  }
  const double b = base.support_length();
  const double n = static_cast<double>(mp.n);
  const double bn = mp.b_n(b);
  const double cn = mp.c_n(b);
  const double an = mp.a_n();
  const double inv_n = 1.0 / n;
  if (!(R + inv_n < base.enclosing_radius())) {
    throw std::domain_error("build_regularized: R + 1/n escapes the enclosing ball");
  }

  const double sigma = std::pow(n, -1.0 / (2.0 * mp.p_star));
  const double kappa = 1.0 - sigma;
  auto h_n = [&](double t) { return kappa * t / bn; };
  auto r_n = [&](double t) {
    return R - h_n(t) * (R - mollified_value(base, mp, t));
  };

  // Junction data at 1/n (convolution side of the first bridge).
  const double m_v = mollified_value(base, mp, inv_n);
  const double m_d = mollified_derivative(base, mp, inv_n);
  const double m_s = mollified_second(base, mp, inv_n);
  const double v_at_invn = R - h_n(inv_n) * (R - m_v);
  const double d_at_invn = -(kappa / bn) * (R - m_v) + h_n(inv_n) * m_d;
  const double s_at_invn = 2.0 * (kappa / bn) * m_d + h_n(inv_n) * m_s;

  // Cap theta(t) = R + 1/n - t^q evaluated at a_n.
  const double v_theta = R + 0.5 * inv_n;  // theta(a_n) = R + 1/(2n)
  const double d_theta = -mp.q * std::pow(an, mp.q - 1.0);
  const double s_theta = -mp.q * (mp.q - 1.0) * std::pow(an, mp.q - 2.0);

  // Junction data at b_n: the convolution and its derivatives vanish there.
  const double v_at_bn = R * sigma;
  const double d_at_bn = -kappa * R / bn;
  const double s_at_bn = 0.0;

  // Tail eta(t) = (b + 2/n - t)^q evaluated at c_n.
  const double tail_gap = b + 2.0 * inv_n - cn;  // (R/2)^(1/q) n^(-1/(2 p* q))
  const double v_eta = 0.5 * R * sigma;          // eta(c_n)
  const double d_eta = -mp.q * std::pow(tail_gap, mp.q - 1.0);
  const double s_eta = mp.q * (mp.q - 1.0) * std::pow(tail_gap, mp.q - 2.0);

  std::vector<Piece> pieces;
  pieces.push_back(Piece::offset_minus_power(0.0, an, R + inv_n, 1.0, 0.0, mp.q));
  for (Piece& p : bridge_pieces(an, inv_n, v_theta, v_at_invn, d_theta, d_at_invn,
                                s_theta, s_at_invn)) {
    pieces.push_back(std::move(p));
  }
  {
    auto values = sample_monotone(r_n, inv_n, bn, b + 2.0, mp, R);
    values.front() = v_at_invn;
    values.back() = v_at_bn;
    pieces.push_back(Piece::sampled(inv_n, bn, std::move(values)));
  }
  for (Piece& p : bridge_pieces(bn, cn, v_at_bn, v_eta, d_at_bn, d_eta, s_at_bn,
                                s_eta)) {
    pieces.push_back(std::move(p));
  }
  pieces.push_back(
      Piece::power_of_linear(cn, b + 2.0 * inv_n, 1.0, b + 2.0 * inv_n, mp.q));

  return RadiusProfile::from_pieces(std::move(pieces), base.enclosing_radius());
}

CoareaReport coarea_report(const RadiusProfile& base, const std::vector<int>& n_values,
                           double q, double p, double extension,
                           const DimensionalConstants& consts) {
  const double e = static_cast<double>(consts.dim) - 1.0 - p;
  const ExtendedValue target =
      consts.unit_sphere_area *
      integral_power(base, e, 0.0, base.support_length());
  const EnergyParams energy_params{p, 1.0, consts};

  CoareaReport report;
  ExtendedValue prev_energy;
  bool have_prev = false;
  for (int n : n_values) {
    const auto mp = MollificationParams::make(n, q, extension, p, consts);
    const RadiusProfile v_n = build_regularized(base, mp);
    CoareaRow row;
    row.n = n;
    row.q = q;
    row.energy = willmore_p(v_n, energy_params);
    row.target = target;
    if (row.energy.is_infinite() || target.is_infinite()) {
      row.rel_error = row.energy.is_infinite() == target.is_infinite()
                          ? 0.0
                          : std::numeric_limits<double>::infinity();
    } else {
      row.rel_error = std::abs(row.energy.value() - target.value()) /
                      std::max(std::abs(target.value()), 1e-300);
    }
    row.l1_gap = l1_distance(v_n, base, consts);
    if (have_prev && !(row.energy <= prev_energy)) report.energy_monotone = false;
    prev_energy = row.energy;
    have_prev = true;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace erosion
