#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace wmark {

/// Shortest decimal form that round-trips, e.g. 0.5, -1, 1.025.
inline std::string format_real(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace wmark
