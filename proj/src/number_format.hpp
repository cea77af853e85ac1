#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace revbound::detail {

// Shortest text that parses back to exactly `x`.
inline std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

}  // namespace revbound::detail
