#pragma once

#include <cstdio>
#include <string>

namespace slaas::detail {

// Locale-independent, fixed-precision rendering for CSV/JSON outputs.
inline std::string format_number(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.10g", value);
  return buffer;
}

}  // namespace slaas::detail
