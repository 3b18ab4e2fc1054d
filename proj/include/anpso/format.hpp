#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace anpso {

/// Shortest decimal string that round-trips to exactly `v`. Keeps CSV and
/// JSON artifacts byte-stable across runs without dumping 17 digits
/// everywhere.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace anpso
