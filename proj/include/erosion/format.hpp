#pragma once

#include <string>

namespace erosion {

/// Shortest decimal representation that round-trips the double ("inf" for
/// infinities); keeps CSV goldens reproducible.
std::string format_shortest(double v);

}  // namespace erosion
