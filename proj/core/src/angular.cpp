#include "wedgetail/angular.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "wedgetail/errors.hpp"

namespace wedgetail {

namespace {

// Indices ordered by the keys descending; equal keys keep index order.
std::vector<std::size_t> order_desc(const std::vector<double>& keys) {
  std::vector<std::size_t> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return keys[a] > keys[b];
  });
  return order;
}

}  // namespace

angular_sample top_k_angles(const sample2& points, std::size_t k) {
  if (k < 1) {
    throw error(errc::invalid_argument, "top_k_angles needs k >= 1");
  }
  std::vector<double> norms(points.size());
  std::size_t nonzero = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    norms[i] = l1_norm(points[i]);
    if (norms[i] > 0.0) ++nonzero;
  }
  if (nonzero < k) {
    throw error(errc::insufficient_data,
                "need at least k points with nonzero norm");
  }
  const std::vector<std::size_t> order = order_desc(norms);
  angular_sample result;
  result.k = k;
  result.thetas.reserve(k);
  result.norms.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = order[j];
    result.thetas.push_back(points[i].x1 / norms[i]);
    result.norms.push_back(norms[i]);
  }
  return result;
}

wedge fit_wedge(const angular_sample& angles, double q_low, double q_high) {
  if (angles.thetas.empty()) {
    throw error(errc::empty_angles, "wedge fit needs a nonempty angular sample");
  }
  if (!(q_low >= 0.0 && q_low < q_high && q_high <= 1.0)) {
    throw error(errc::invalid_argument,
                "quantile pair must satisfy 0 <= q_low < q_high <= 1");
  }
  std::vector<double> sorted(angles.thetas);
  std::sort(sorted.begin(), sorted.end());
  const double theta_l = nearest_rank_quantile(sorted, q_low);
  const double theta_u = nearest_rank_quantile(sorted, q_high);
  // theta_l == theta_u collapses the wedge to a single ray; allowed, the
  // caller reads is_degenerate().
  return wedge_from_angles(theta_l, theta_u);
}

empirical_angular_measure empirical_s0(const sample2& points, const wedge& w,
                                       std::size_t k) {
  if (k < 1) {
    throw error(errc::invalid_argument, "empirical_s0 needs k >= 1");
  }
  std::vector<double> distances;
  std::vector<std::size_t> index;
  distances.reserve(points.size());
  index.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    const point2& p = points[i];
    const double above = p.x2 - w.a_u * p.x1;
    const double below = w.a_l * p.x1 - p.x2;
    if (above > 0.0 || below > 0.0) {
      distances.push_back(dist_to_wedge(p, w).d);
      index.push_back(i);
    }
  }
  if (distances.size() < k) {
    throw error(errc::insufficient_exceedances,
                "only " + std::to_string(distances.size()) +
                    " points outside the wedge, need " + std::to_string(k));
  }
  const std::vector<std::size_t> order = order_desc(distances);
  empirical_angular_measure measure;
  measure.atoms.reserve(k);
  const double weight = 1.0 / static_cast<double>(k);
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t i = index[order[j]];
    const double d = distances[order[j]];
    measure.atoms.push_back(
        {{points[i].x1 / d, points[i].x2 / d}, weight});
  }
  return measure;
}

}  // namespace wedgetail
