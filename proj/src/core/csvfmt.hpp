#pragma once

#include <charconv>
#include <string>

namespace ants {

// Shortest decimal rendering that parses back to the identical double.
inline std::string csv_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace ants
