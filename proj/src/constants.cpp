#include "erosion/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace erosion {

DimensionalConstants make_constants(int dim) {
  if (dim < 2) {
    throw std::domain_error("make_constants: dimension must be >= 2, got " +
                            std::to_string(dim));
  }
  const double half = 0.5 * static_cast<double>(dim);
  const double ball = std::pow(M_PI, half) / std::tgamma(half + 1.0);
  return DimensionalConstants{dim, ball, static_cast<double>(dim) * ball};
}

}  // namespace erosion
