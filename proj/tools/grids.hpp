#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mfwr::cli {

struct Grid {
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t n = 1;
};

inline Grid singleton(double v) { return {v, v, 1}; }

// value(i) hits both endpoints exactly regardless of rounding in the step
inline double grid_value(const Grid& g, std::int64_t i) {
  if (g.n == 1 || i == 0) return g.lo;
  if (i == g.n - 1) return g.hi;
  return g.lo + static_cast<double>(i) * (g.hi - g.lo) / static_cast<double>(g.n - 1);
}

// "MIN:MAX:N" with N >= 1 and MIN <= MAX
inline Grid parse_grid(const std::string& s) {
  const auto bad = [&](const char* why) {
    throw std::invalid_argument("grid '" + s + "': " + why + " (expected MIN:MAX:N)");
  };
  const auto c1 = s.find(':');
  const auto c2 = (c1 == std::string::npos) ? std::string::npos : s.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos)
    bad("need exactly two ':' separators");
  Grid g;
  std::size_t used = 0;
  try {
    g.lo = std::stod(s.substr(0, c1), &used);
    if (used != c1) bad("malformed MIN");
    g.hi = std::stod(s.substr(c1 + 1, c2 - c1 - 1), &used);
    if (used != c2 - c1 - 1) bad("malformed MAX");
    g.n = std::stoll(s.substr(c2 + 1), &used);
    if (used != s.size() - c2 - 1) bad("malformed N");
  } catch (const std::invalid_argument&) {
    bad("not a number");
  } catch (const std::out_of_range&) {
    bad("out of range");
  }
  if (!(g.lo <= g.hi)) bad("MIN must be <= MAX");
  if (g.n < 1) bad("N must be >= 1");
  return g;
}

}  // namespace mfwr::cli
