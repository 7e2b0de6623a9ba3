#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pzeta {

// A sampled real-valued function of delta.
struct Curve {
  std::vector<double> deltas;  // strictly increasing
  std::vector<double> values;  // same length, all finite
};

inline void validate(const Curve& c) {
  if (c.deltas.size() != c.values.size())
    throw std::invalid_argument("Curve: deltas/values length mismatch");
  for (std::size_t i = 0; i < c.deltas.size(); ++i) {
    if (!std::isfinite(c.deltas[i]) || !std::isfinite(c.values[i]))
      throw std::invalid_argument("Curve: non-finite entry");
    if (i > 0 && !(c.deltas[i] > c.deltas[i - 1]))
      throw std::invalid_argument("Curve: deltas not strictly increasing");
  }
}

// 12 significant digits: enough to round-trip visibly identical curves
// across platforms while keeping files diffable.
inline std::string format_sig12(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline void write_curve_csv(std::ostream& os, const Curve& c,
                            const char* value_header = "value") {
  os << "delta," << value_header << "\n";
  for (std::size_t i = 0; i < c.deltas.size(); ++i)
    os << format_sig12(c.deltas[i]) << ',' << format_sig12(c.values[i]) << "\n";
}

}  // namespace pzeta
