#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace wedgetail {

// A bivariate observation. Coordinates are expected to be finite.
struct point2 {
  double x1 = 0.0;
  double x2 = 0.0;
};

using sample2 = std::vector<point2>;

inline double l1_norm(point2 p) noexcept {
  return std::abs(p.x1) + std::abs(p.x2);
}

// One estimate per number of upper order statistics k. Producers keep k
// strictly increasing and values finite. Curves built by alt_hill_curve set
// has_theta and record the exploration exponent theta with every entry;
// everyone else leaves theta NaN.
struct curve_entry {
  std::size_t k = 0;
  double value = 0.0;
  double theta = std::numeric_limits<double>::quiet_NaN();
};

struct estimator_curve {
  std::vector<curve_entry> entries;
  bool has_theta = false;
};

// Nearest-rank empirical quantile: element at index ceil(q*m) (1-based,
// clamped to [1, m]) of the sorted input, so q=0 gives the minimum and q=1
// the maximum. values must be sorted ascending and nonempty.
double nearest_rank_quantile(const std::vector<double>& sorted_values, double q);

}  // namespace wedgetail
