#pragma once

#include <iosfwd>
#include <string>

#include "erosion/profile.hpp"

namespace erosion {

/// A parsed profile file: the radius profile plus the ambient dimension it
/// declares.
struct ProfileFile {
  RadiusProfile profile;
  int dim;
};

/// Line-oriented profile format (UTF-8, one directive per line):
///
///   dim = <int>
///   R0 = <float>
///   piece <t_lo> <t_hi> constant <v>
///   piece <t_lo> <t_hi> powlin <c> <beta> <q>
///   piece <t_lo> <t_hi> offpow <C> <D> <t0> <q>
///   piece <t_lo> <t_hi> poly <c0> <c1> ...
///   piece <t_lo> <t_hi> sampled <v0> <v1> ...
///
/// Polynomial coefficients are in the piece-local variable t - t_lo. Pieces
/// must tile [0, a) exactly; gaps and overlaps are rejected. Blank lines and
/// lines starting with '#' are ignored. Throws std::domain_error with a
/// line-numbered message on malformed input.
ProfileFile parse_profile(std::istream& in);
ProfileFile load_profile(const std::string& path);

void write_profile(std::ostream& out, const RadiusProfile& profile, int dim);

}  // namespace erosion
