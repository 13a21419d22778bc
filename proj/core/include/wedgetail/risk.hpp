#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wedgetail/angular.hpp"
#include "wedgetail/geometry.hpp"
#include "wedgetail/types.hpp"

namespace wedgetail {

// Joint tail event {X2 > x, X2 > c X1} with c above the wedge's upper slope;
// x is the level, c the steepness.
struct risk_query {
  double c = 2.0;
  double x = 1.0;
};

struct risk_estimate {
  double p_hat = 0.0;
  double alpha0_used = 0.0;
  double b0_used = 0.0;
  std::size_t k_used = 0;
  std::size_t n = 0;
  std::vector<std::string> warnings;
};

// Transparent kernel shared by the estimators below:
//   p_hat(x) = x^{-alpha0} (k/n) b0^{alpha0} (1/k) sum_i [(mu2_i - c mu1_i)+]^{alpha0}
// over the given atoms, so any estimate is recomputable from its parts.
// Estimates above 1 are reported as-is with a warning.
risk_estimate risk_formula(const empirical_angular_measure& atoms,
                           const risk_query& query, double alpha0, double b0,
                           std::size_t k, std::size_t n);

// Plug-in estimate with b0 the k-th largest wedge distance and mu_i the
// rescaled top-k atoms. c <= a_u makes the event overlap the wedge: flagged
// as a warning, not an error.
risk_estimate estimate_risk(const sample2& points, const wedge& w,
                            const risk_query& query, double alpha0,
                            std::size_t k);

// Same estimator but anchored at a fixed threshold b0; k becomes the number
// of strictly-outside points with distance >= b0.
risk_estimate estimate_risk_fixed_b0(const sample2& points, const wedge& w,
                                     const risk_query& query, double alpha0,
                                     double b0);

// Closed-form references for the two canonical queries under the simplex
// mixture model (valid for x >= 1):
//   p1: c = 2, P = (5/84)  x^{-5/2}
//   p2: c = 3, P = (5/112) x^{-5/2}
enum class p_variant { p1, p2 };

double exact_p_example2(p_variant variant, double x);

// Monte Carlo study of estimated-over-exact ratios across replications of
// the simplex mixture. Each replication rep (0-based) uses seed
// base_seed + rep. Two flavors per query: "bar" keeps the known residual
// index, "hat" re-estimates it per replication; both anchor at the fixed
// threshold b0_target. forced_wedge skips the per-replication angular fit
// for the hat flavor too (sensitivity mode); by default bar uses the model's
// wedge while hat refits from the top fit_k_angles angles.
struct ratio_study_config {
  std::uint64_t base_seed = 0;
  double b0_target = 2.0;
  std::vector<double> x_values = {1.0, 4.0};
  double known_alpha0 = 2.5;
  wedge known_wedge = wedge(2.0 / 3.0, 1.5);
  std::optional<wedge> forced_wedge;
  std::size_t fit_k_angles = 100;
  double fit_q_low = 0.05;
  double fit_q_high = 0.95;
};

struct ratio_row {
  std::size_t rep = 0;
  std::string quantity;  // p1_bar, p1_hat, p2_bar, p2_hat
  double x = 0.0;
  double ratio = 0.0;
};

struct ratio_summary_row {
  std::string quantity;
  double x = 0.0;
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

struct ratio_study_result {
  std::vector<ratio_row> rows;
  std::vector<ratio_summary_row> summary;
};

ratio_study_result ratio_study(std::size_t reps, std::size_t n,
                               const ratio_study_config& config);

}  // namespace wedgetail
