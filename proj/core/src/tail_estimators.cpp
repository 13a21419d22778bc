#include "wedgetail/tail_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "wedgetail/errors.hpp"

namespace wedgetail {

namespace {

// Decreasing order statistics of the strictly positive entries. Throws when
// fewer than `needed` survive and the caller had enough raw entries (the
// shortage is then due to nonpositive values, a different failure).
std::vector<double> positive_desc(std::span<const double> data,
                                  std::size_t needed) {
  std::vector<double> values;
  values.reserve(data.size());
  for (double v : data) {
    if (v > 0.0) values.push_back(v);
  }
  if (values.size() < needed) {
    if (data.size() < needed) {
      throw error(errc::insufficient_data,
                  "need at least " + std::to_string(needed) + " values");
    }
    throw error(errc::nonpositive_tail,
                "need at least " + std::to_string(needed) +
                    " strictly positive values");
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  return values;
}

double mean_log_excess(const std::vector<double>& desc, std::size_t k) {
  const double threshold = desc[k];  // X_(k+1)
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += std::log(desc[i] / threshold);
  }
  return sum / static_cast<double>(k);
}

}  // namespace

double hill(std::span<const double> data, std::size_t k) {
  if (k < 2) {
    throw error(errc::insufficient_data, "hill needs k >= 2");
  }
  const std::vector<double> desc = positive_desc(data, k + 1);
  const double mean = mean_log_excess(desc, k);
  if (!(mean > 0.0)) {
    throw error(errc::degenerate_fit,
                "constant upper tail: mean log-excess is zero");
  }
  return 1.0 / mean;
}

estimator_curve alt_hill_curve(std::span<const double> data,
                               std::span<const double> theta_grid) {
  if (theta_grid.empty()) {
    throw error(errc::invalid_argument, "empty exploration grid");
  }
  for (std::size_t i = 0; i < theta_grid.size(); ++i) {
    const double t = theta_grid[i];
    if (!(t > 0.0 && t < 1.0)) {
      throw error(errc::invalid_argument,
                  "exploration exponents must lie in (0, 1)");
    }
    if (i > 0 && !(t > theta_grid[i - 1])) {
      throw error(errc::invalid_argument,
                  "exploration grid must be strictly increasing");
    }
  }
  const double n = static_cast<double>(data.size());
  estimator_curve curve;
  curve.has_theta = true;
  std::size_t last_k = 0;
  for (double theta : theta_grid) {
    auto k = static_cast<std::size_t>(std::ceil(std::pow(n, theta)));
    k = std::clamp<std::size_t>(k, 2, data.size() >= 3 ? data.size() - 1 : 2);
    if (k == last_k) continue;  // same k as the previous theta: keep the first
    curve.entries.push_back({k, hill(data, k), theta});
    last_k = k;
  }
  return curve;
}

std::vector<double> default_theta_grid() {
  std::vector<double> grid;
  grid.reserve(86);
  for (int i = 10; i <= 95; ++i) {
    grid.push_back(static_cast<double>(i) / 100.0);
  }
  return grid;
}

double qq_slope(std::span<const double> data, std::size_t k) {
  if (k < 2) {
    throw error(errc::insufficient_data, "qq_slope needs k >= 2");
  }
  const std::vector<double> desc = positive_desc(data, k + 1);
  const double threshold = desc[k];
  // Least squares with intercept on (log((k+1)/j), log(X_(j)/threshold)).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    const double x =
        std::log(static_cast<double>(k + 1) / static_cast<double>(j));
    const double y = std::log(desc[j - 1] / threshold);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double kd = static_cast<double>(k);
  const double slope = (kd * sxy - sx * sy) / (kd * sxx - sx * sx);
  if (!(slope > 0.0)) {
    throw error(errc::degenerate_fit,
                "qq ordinates carry no slope (constant tail)");
  }
  return 1.0 / slope;
}

namespace {

// Indices of the k largest xi, xi descending, ties by original index.
std::vector<std::size_t> top_k_by_xi(std::span<const double> xi,
                                     std::size_t k) {
  std::vector<std::size_t> order(xi.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return xi[a] > xi[b]; });
  order.resize(k);
  return order;
}

std::vector<std::size_t> ranks_of(const std::vector<double>& eta_star) {
  std::vector<double> sorted(eta_star);
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::size_t> ranks(eta_star.size());
  for (std::size_t j = 0; j < eta_star.size(); ++j) {
    // N_j counts <= ties, so the rank is the upper-bound position.
    ranks[j] = static_cast<std::size_t>(
        std::upper_bound(sorted.begin(), sorted.end(), eta_star[j]) -
        sorted.begin());
  }
  return ranks;
}

void check_pair_sizes(std::span<const double> xi, std::span<const double> eta,
                      std::size_t k) {
  if (xi.size() != eta.size()) {
    throw error(errc::length_mismatch,
                "xi and eta must have the same length");
  }
  if (k < 2) {
    throw error(errc::insufficient_data, "rank statistics need k >= 2");
  }
  if (xi.size() < k) {
    throw error(errc::insufficient_data,
                "need at least k paired observations");
  }
}

std::vector<double> jittered(std::span<const double> eta,
                             std::uint64_t seed) {
  double max_abs = 0.0;
  for (double e : eta) max_abs = std::max(max_abs, std::abs(e));
  const double scale = 1e-9 * (max_abs > 0.0 ? max_abs : 1.0);
  std::mt19937_64 rng(seed);
  std::vector<double> out(eta.begin(), eta.end());
  for (double& e : out) {
    const double u =
        static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;  // u in (0, 1]
    e += scale * u;
  }
  return out;
}

double hillish_from_ranks(const concomitant_ranks& cr) {
  const double kd = static_cast<double>(cr.k);
  double sum = 0.0;
  for (std::size_t j = 1; j <= cr.k; ++j) {
    sum += std::log(kd / static_cast<double>(j)) *
           std::log(kd / static_cast<double>(cr.ranks[j - 1]));
  }
  return sum / kd;
}

}  // namespace

concomitant_ranks rank_concomitants(std::span<const double> xi,
                                    std::span<const double> eta,
                                    std::size_t k) {
  check_pair_sizes(xi, eta, k);
  const std::vector<std::size_t> order = top_k_by_xi(xi, k);
  std::vector<double> eta_star(k);
  for (std::size_t j = 0; j < k; ++j) eta_star[j] = eta[order[j]];
  return {k, ranks_of(eta_star)};
}

double hillish(std::span<const double> xi, std::span<const double> eta,
               std::size_t k, const hillish_options& options) {
  if (options.jitter_ties) {
    const std::vector<double> eta_j = jittered(eta, options.jitter_seed);
    return hillish_from_ranks(rank_concomitants(xi, eta_j, k));
  }
  return hillish_from_ranks(rank_concomitants(xi, eta, k));
}

std::pair<estimator_curve, estimator_curve> hillish_pair_curve(
    std::span<const double> xi, std::span<const double> eta,
    std::span<const std::size_t> k_grid, const hillish_options& options) {
  if (k_grid.empty()) {
    throw error(errc::invalid_argument, "empty k grid");
  }
  for (std::size_t i = 1; i < k_grid.size(); ++i) {
    if (k_grid[i] <= k_grid[i - 1]) {
      throw error(errc::invalid_argument, "k grid must be strictly increasing");
    }
  }
  std::vector<double> neg(eta.size());
  std::transform(eta.begin(), eta.end(), neg.begin(),
                 [](double e) { return -e; });
  estimator_curve pos_curve, neg_curve;
  for (std::size_t k : k_grid) {
    pos_curve.entries.push_back({k, hillish(xi, eta, k, options)});
    neg_curve.entries.push_back({k, hillish(xi, neg, k, options)});
  }
  return {std::move(pos_curve), std::move(neg_curve)};
}

}  // namespace wedgetail
