#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wedgetail/geometry.hpp"
#include "wedgetail/tail_estimators.hpp"
#include "wedgetail/types.hpp"

namespace wedgetail {

// One branch of the residual sample after the wedge is carved out.
// xi is the perpendicular distance to the nearer wedge face, eta the angular
// coordinate along it:
//   above: xi = (z2 - a_u z1)/sqrt(1+a_u^2),  eta = z2/z1
//   below: xi = (a_l z1 - z2)/sqrt(1+a_l^2),  eta = z1/z2
// Only points strictly on that side with finite eta are kept, in input order.
struct branch_data {
  branch side = branch::above_wedge;
  std::vector<double> xi;
  std::vector<double> eta;
};

branch_data branch_transform(const sample2& points, const wedge& w,
                             branch side);

struct branch_selection {
  bool above = true;
  bool below = true;
};

// Hill estimate of the residual tail index alpha_0 on the pooled xi of the
// selected branches (pooling both sides sharpens the tail when the residual
// measure charges both).
double estimate_alpha0(const sample2& points, const wedge& w, std::size_t k,
                       branch_selection branches = {});

// k-th largest wedge distance among strictly-outside points: the radial
// threshold b_0 paired with k exceedances.
double estimate_b0(const sample2& points, const wedge& w, std::size_t k);

// Inverse convention: how many strictly-outside points have distance >= b0.
std::size_t implied_k_for_b0(const sample2& points, const wedge& w,
                             double b0);

enum class marginal_estimator { hill_estimator, qq_estimator };

// Tuning for the full detection pipeline. Zero means "derive from n":
// k_marginal defaults to n/30, k_alpha0 to n/60, both floored at 10.
struct hrv_config {
  std::size_t k_angles = 200;
  double q_low = 0.05;
  double q_high = 0.95;
  std::optional<wedge> wedge_override;

  std::size_t k_marginal = 0;
  std::size_t k_alpha0 = 0;
  marginal_estimator marginal = marginal_estimator::hill_estimator;
  bool pool_branches = true;

  // Decision thresholds: alpha_0 must clear alpha by this margin, and both
  // product-diagnostic curves must stay inside 1 +- hillish_band over the
  // stable range [stable_low_frac*n, stable_high_frac*n].
  double alpha0_margin = 0.3;
  double hillish_band = 0.15;
  double stable_low_frac = 0.005;
  double stable_high_frac = 0.05;
  std::size_t hillish_grid_points = 64;

  bool jitter_ties = false;
  std::uint64_t jitter_seed = 0;
};

struct curve_summary {
  double mean = 0.0;
  double max_dev = 0.0;  // max |value - 1| over the stable range
  estimator_curve curve;
};

struct branch_diagnostics {
  std::optional<double> alpha0;
  std::size_t n_points = 0;
  curve_summary hillish_eta;
  curve_summary hillish_neg_eta;
  bool hrv_supported = false;
};

struct hrv_report {
  hrv_config config;
  std::size_t n = 0;

  wedge w;
  bool wedge_fitted = false;

  double alpha_hat = 0.0;
  double alpha_hat_x1 = 0.0;
  double alpha_hat_x2 = 0.0;

  std::optional<double> alpha0_above;
  std::optional<double> alpha0_below;
  std::optional<double> alpha0_pooled;
  std::optional<double> b0_hat;
  std::size_t k_used = 0;

  std::optional<branch_diagnostics> above;
  std::optional<branch_diagnostics> below;

  bool hrv_supported = false;
  std::vector<std::string> flags;
};

// Full pipeline: marginal tail indices, wedge (fitted from the top angles
// unless overridden), residual tail index per branch and pooled, product
// diagnostics, and the supported/doubtful verdict with explanatory flags.
hrv_report detect(const sample2& points, const hrv_config& config = {});

}  // namespace wedgetail
