#pragma once

#include "wedgetail/types.hpp"

namespace wedgetail {

enum class branch { above_wedge, below_wedge };

const char* branch_name(branch b) noexcept;

// The closed cone {x : a_l*x1 <= x2 <= a_u*x1} removed from the state space.
// Slopes satisfy 0 < a_l <= a_u < inf; a_l = a_u = 1 is the diagonal ray.
// Wedges with a_l <= 1 <= a_u are the ones compatible with tail-equivalent
// margins; construction outside that range is allowed but flagged via
// brackets_diagonal().
struct wedge {
  double a_l = 1.0;
  double a_u = 1.0;

  wedge() = default;
  wedge(double lower_slope, double upper_slope);

  bool is_diagonal() const noexcept { return a_l == 1.0 && a_u == 1.0; }
  bool is_degenerate() const noexcept { return a_l == a_u; }
  bool brackets_diagonal() const noexcept { return a_l <= 1.0 && 1.0 <= a_u; }

  // Angular parameterization: theta = 1/(1+a), so theta_l pairs with a_u.
  double theta_l() const noexcept { return 1.0 / (1.0 + a_u); }
  double theta_u() const noexcept { return 1.0 / (1.0 + a_l); }
};

// Builds the wedge whose boundary rays have L1-angles theta_l and theta_u:
// a_l = 1/theta_u - 1, a_u = 1/theta_l - 1. Requires 0 < theta_l <= theta_u < 1.
wedge wedge_from_angles(double theta_l, double theta_u);

// L1 polar coordinates: r = |x1| + |x2|, theta = x1 / r.
struct l1_polar_point {
  double r = 0.0;
  double theta = 0.0;
};

l1_polar_point l1_polar(point2 p);

// Projection onto the L1 unit sphere (the diamond), keeping the norm.
struct diamond_point {
  double theta1 = 0.0;
  double theta2 = 0.0;
  double norm = 0.0;
};

diamond_point to_diamond(point2 p);

// Euclidean distance to the wedge plus the side the point falls on:
//   above (x2 > a_u*x1): d = |x2 - a_u*x1| / sqrt(1 + a_u^2)
//   below (x2 < a_l*x1): d = |x2 - a_l*x1| / sqrt(1 + a_l^2)
// For the diagonal wedge both reduce to |x1 - x2| / sqrt(2).
// Points in the closed wedge (boundary included) are rejected: d = 0 would
// leave the angular part undefined. Callers with negative coordinates must
// pre-filter through region_filter_upper.
struct wedge_distance {
  double d = 0.0;
  branch side = branch::above_wedge;
};

wedge_distance dist_to_wedge(point2 p, const wedge& w);

// Generalized polar coordinates: r is the distance to the wedge, mu = p / r
// lies on the generalized unit sphere (its own distance to the wedge is 1).
struct gpolar_point {
  double r = 0.0;
  point2 mu;
  branch side = branch::above_wedge;
};

gpolar_point gpolar(point2 p, const wedge& w);

// Inverse transform: (r, mu) -> r * mu.
point2 gpolar_inverse(double r, point2 mu);

// Keeps exactly the points with x2 > 0, x2 - a_u*x1 > 0 and x1 + a_u*x2 > 0:
// the region (extending into x1 < 0) whose nearest wedge point lies on the
// upper boundary ray, so the above-wedge distance formula stays valid.
sample2 region_filter_upper(const sample2& points, const wedge& w);

}  // namespace wedgetail
