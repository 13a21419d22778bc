#pragma once

#include <vector>

#include "wedgetail/geometry.hpp"
#include "wedgetail/types.hpp"

namespace wedgetail {

// Angles theta = x1/(|x1|+|x2|) of the k observations with the largest L1
// norm. Both vectors are ordered by decreasing norm; norm ties keep input
// order. Zero points never qualify (their norm is 0 and n > k guards them
// out only if enough nonzero mass exists, so callers pass k <= #nonzero).
struct angular_sample {
  std::vector<double> thetas;
  std::vector<double> norms;
  std::size_t k = 0;
};

angular_sample top_k_angles(const sample2& points, std::size_t k);

// Wedge whose angular span covers the central bulk of the large-norm angles:
// theta_l / theta_u are the q_low / q_high empirical quantiles (nearest
// rank) of the angles, mapped through a = 1/theta - 1. A fit that fails to
// bracket the diagonal is returned as-is; brackets_diagonal() reports it.
wedge fit_wedge(const angular_sample& angles, double q_low, double q_high);

// Empirical spectral measure on the distance-1 locus: equal weights 1/k on
// the rescaled positions mu_i = x_i / d(x_i, wedge) of the k points farthest
// from the wedge, among those strictly outside it.
struct empirical_angular_measure {
  struct atom {
    point2 mu;
    double weight = 0.0;
  };
  std::vector<atom> atoms;
};

empirical_angular_measure empirical_s0(const sample2& points, const wedge& w,
                                       std::size_t k);

}  // namespace wedgetail
