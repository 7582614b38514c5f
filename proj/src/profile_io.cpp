#include "erosion/profile_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "erosion/format.hpp"

namespace erosion {

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  throw std::domain_error("profile line " + std::to_string(line) + ": " + what);
}

std::string format_double(double v) { return format_shortest(v); }

}  // namespace

ProfileFile parse_profile(std::istream& in) {
  int dim = 0;
  double enclosing = 0.0;
  bool have_dim = false, have_r0 = false;
  std::vector<Piece> pieces;

  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream row(line);
    std::string head;
    if (!(row >> head) || head[0] == '#') continue;

    if (head == "dim" || head == "R0") {
      std::string eq;
      row >> eq;
      if (eq != "=") parse_fail(line_no, "expected '='");
      if (head == "dim") {
        if (!(row >> dim)) parse_fail(line_no, "malformed dimension");
        have_dim = true;
      } else {
        if (!(row >> enclosing)) parse_fail(line_no, "malformed R0");
        have_r0 = true;
      }
      continue;
    }
    if (head != "piece") parse_fail(line_no, "unknown directive '" + head + "'");

    double t_lo, t_hi;
    std::string kind;
    if (!(row >> t_lo >> t_hi >> kind)) parse_fail(line_no, "malformed piece header");
    if (!pieces.empty() && pieces.back().t_hi != t_lo) {
      parse_fail(line_no, "pieces must tile [0, a): gap or overlap at t = " +
                              format_double(t_lo));
    }
    if (pieces.empty() && t_lo != 0.0) parse_fail(line_no, "first piece must start at 0");

    if (kind == "constant") {
      double v;
      if (!(row >> v)) parse_fail(line_no, "constant piece needs a value");
      pieces.push_back(Piece::constant(t_lo, t_hi, v));
    } else if (kind == "powlin") {
      double c, beta, q;
      if (!(row >> c >> beta >> q)) parse_fail(line_no, "powlin needs c, beta, q");
      pieces.push_back(Piece::power_of_linear(t_lo, t_hi, c, beta, q));
    } else if (kind == "offpow") {
      double C, D, t0, q;
      if (!(row >> C >> D >> t0 >> q)) parse_fail(line_no, "offpow needs C, D, t0, q");
      pieces.push_back(Piece::offset_minus_power(t_lo, t_hi, C, D, t0, q));
    } else if (kind == "poly" || kind == "sampled") {
      std::vector<double> values;
      double v;
      while (row >> v) values.push_back(v);
      if (values.empty()) parse_fail(line_no, kind + " piece needs values");
      pieces.push_back(kind == "poly" ? Piece::polynomial(t_lo, t_hi, std::move(values))
                                      : Piece::sampled(t_lo, t_hi, std::move(values)));
    } else {
      parse_fail(line_no, "unknown piece kind '" + kind + "'");
    }
    double trailing;
    if (row >> trailing) parse_fail(line_no, "trailing values");
  }
  if (!have_dim) throw std::domain_error("profile: missing 'dim = <int>'");
  if (!have_r0) throw std::domain_error("profile: missing 'R0 = <float>'");
  return ProfileFile{RadiusProfile::from_pieces(std::move(pieces), enclosing), dim};
}

ProfileFile load_profile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::domain_error("cannot open profile file: " + path);
  return parse_profile(in);
}

void write_profile(std::ostream& out, const RadiusProfile& profile, int dim) {
  out << "dim = " << dim << "\n";
  out << "R0 = " << format_double(profile.enclosing_radius()) << "\n";
  for (const Piece& p : profile.pieces()) {
    out << "piece " << format_double(p.t_lo) << " " << format_double(p.t_hi);
    switch (p.kind) {
      case PieceKind::kConstant:
        out << " constant " << format_double(p.a0);
        break;
      case PieceKind::kPowerOfLinear:
        out << " powlin " << format_double(p.a0) << " " << format_double(p.a1) << " "
            << format_double(p.a2);
        break;
      case PieceKind::kOffsetMinusPower:
        out << " offpow " << format_double(p.a0) << " " << format_double(p.a1) << " "
            << format_double(p.a2) << " " << format_double(p.a3);
        break;
      case PieceKind::kPolynomial:
        out << " poly";
        for (double c : p.data) out << " " << format_double(c);
        break;
      case PieceKind::kSampled:
        out << " sampled";
        for (double v : p.data) out << " " << format_double(v);
        break;
    }
    out << "\n";
  }
}

}  // namespace erosion
