#pragma once

// Internal arithmetic shared by the incremental updaters.

#include <algorithm>
#include <cstddef>

namespace rmstream::detail {

/// Moves a normalised mean from (old_neighbours, old_d_max) to
/// (new_neighbours, new_d_max) after the raw distance sum changes by `delta`.
inline double renormalize(double mean, std::size_t old_neighbours, double old_d_max,
                          double delta, std::size_t new_neighbours, double new_d_max) {
  if (new_d_max <= 0.0 || new_neighbours == 0) return 0.0;
  const double raw = mean * static_cast<double>(old_neighbours) * old_d_max + delta;
  return std::clamp(raw / (static_cast<double>(new_neighbours) * new_d_max), 0.0, 1.0);
}

inline double normalized(double sum, std::size_t neighbours, double d_max) {
  if (d_max <= 0.0 || neighbours == 0) return 0.0;
  return std::clamp(sum / (static_cast<double>(neighbours) * d_max), 0.0, 1.0);
}

}  // namespace rmstream::detail
