#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace algomev {

// Fixed-point decimal rendering; used for every float that reaches a CSV so
// outputs stay byte-stable.
inline std::string fixed(double v, int digits) {
  if (v == 0.0) v = 0.0;  // drop negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  std::string s = buf;
  if (s.size() > 1 && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

inline double round_to(double v, int digits) {
  const double scale = std::pow(10.0, digits);
  return std::round(v * scale) / scale;
}

}  // namespace algomev
