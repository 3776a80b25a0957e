#pragma once

#include <cstdio>
#include <string>

namespace chanwit::cli {

/// Nine significant digits, '.' decimal separator regardless of locale.
inline std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace chanwit::cli
