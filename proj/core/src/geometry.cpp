#include "wedgetail/geometry.hpp"

#include <cmath>
#include <string>

#include "wedgetail/errors.hpp"

namespace wedgetail {

namespace {

void require_finite(point2 p) {
  if (!std::isfinite(p.x1) || !std::isfinite(p.x2)) {
    throw error(errc::invalid_argument, "point coordinates must be finite");
  }
}

void require_nonzero(point2 p) {
  if (p.x1 == 0.0 && p.x2 == 0.0) {
    throw error(errc::zero_point, "operation undefined at the origin");
  }
}

}  // namespace

const char* branch_name(branch b) noexcept {
  return b == branch::above_wedge ? "above_wedge" : "below_wedge";
}

wedge::wedge(double lower_slope, double upper_slope)
    : a_l(lower_slope), a_u(upper_slope) {
  if (!(a_l > 0.0) || !(a_u >= a_l) || !std::isfinite(a_u)) {
    throw error(errc::invalid_argument,
                "wedge slopes must satisfy 0 < a_l <= a_u < inf");
  }
}

wedge wedge_from_angles(double theta_l, double theta_u) {
  if (!(theta_l > 0.0) || !(theta_u >= theta_l) || !(theta_u < 1.0)) {
    throw error(errc::out_of_range_angle,
                "boundary angles must satisfy 0 < theta_l <= theta_u < 1");
  }
  return wedge(1.0 / theta_u - 1.0, 1.0 / theta_l - 1.0);
}

l1_polar_point l1_polar(point2 p) {
  require_finite(p);
  require_nonzero(p);
  const double r = l1_norm(p);
  return {r, p.x1 / r};
}

diamond_point to_diamond(point2 p) {
  require_finite(p);
  require_nonzero(p);
  const double r = l1_norm(p);
  return {p.x1 / r, p.x2 / r, r};
}

wedge_distance dist_to_wedge(point2 p, const wedge& w) {
  require_finite(p);
  const double above = p.x2 - w.a_u * p.x1;
  const double below = w.a_l * p.x1 - p.x2;
  if (above > 0.0) {
    return {above / std::sqrt(1.0 + w.a_u * w.a_u), branch::above_wedge};
  }
  if (below > 0.0) {
    return {below / std::sqrt(1.0 + w.a_l * w.a_l), branch::below_wedge};
  }
  throw error(errc::inside_forbidden_zone,
              "point lies in the closed wedge; distance would be 0");
}

gpolar_point gpolar(point2 p, const wedge& w) {
  const wedge_distance wd = dist_to_wedge(p, w);
  return {wd.d, {p.x1 / wd.d, p.x2 / wd.d}, wd.side};
}

point2 gpolar_inverse(double r, point2 mu) {
  return {r * mu.x1, r * mu.x2};
}

sample2 region_filter_upper(const sample2& points, const wedge& w) {
  sample2 kept;
  kept.reserve(points.size());
  for (const point2& p : points) {
    if (p.x2 > 0.0 && p.x2 - w.a_u * p.x1 > 0.0 &&
        p.x1 + w.a_u * p.x2 > 0.0) {
      kept.push_back(p);
    }
  }
  return kept;
}

}  // namespace wedgetail
