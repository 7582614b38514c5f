#include "erosion/format.hpp"

#include <charconv>

namespace erosion {

std::string format_shortest(double v) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

}  // namespace erosion
