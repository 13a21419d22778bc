#include "wedgetail/hrv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "wedgetail/angular.hpp"
#include "wedgetail/errors.hpp"

namespace wedgetail {

branch_data branch_transform(const sample2& points, const wedge& w,
                             branch side) {
  branch_data out;
  out.side = side;
  const double den_u = std::sqrt(1.0 + w.a_u * w.a_u);
  const double den_l = std::sqrt(1.0 + w.a_l * w.a_l);
  for (const point2& p : points) {
    if (side == branch::above_wedge) {
      const double excess = p.x2 - w.a_u * p.x1;
      if (excess > 0.0 && p.x1 != 0.0) {
        const double eta = p.x2 / p.x1;
        if (std::isfinite(eta)) {
          out.xi.push_back(excess / den_u);
          out.eta.push_back(eta);
        }
      }
    } else {
      const double excess = w.a_l * p.x1 - p.x2;
      if (excess > 0.0 && p.x2 != 0.0) {
        const double eta = p.x1 / p.x2;
        if (std::isfinite(eta)) {
          out.xi.push_back(excess / den_l);
          out.eta.push_back(eta);
        }
      }
    }
  }
  if (out.xi.empty()) {
    throw error(errc::empty_branch,
                std::string("no points strictly ") +
                    (side == branch::above_wedge ? "above" : "below") +
                    " the wedge");
  }
  return out;
}

namespace {

std::vector<double> pooled_xi(const sample2& points, const wedge& w,
                              branch_selection branches) {
  if (!branches.above && !branches.below) {
    throw error(errc::invalid_argument, "no branch selected");
  }
  // A single selected branch propagates empty_branch; when pooling, an
  // empty side just contributes nothing.
  if (branches.above != branches.below) {
    return branch_transform(
               points, w,
               branches.above ? branch::above_wedge : branch::below_wedge)
        .xi;
  }
  std::vector<double> xi;
  bool both_empty = true;
  for (branch side : {branch::above_wedge, branch::below_wedge}) {
    try {
      branch_data bd = branch_transform(points, w, side);
      xi.insert(xi.end(), bd.xi.begin(), bd.xi.end());
      both_empty = false;
    } catch (const error& e) {
      if (e.code() != errc::empty_branch) throw;
    }
  }
  if (both_empty) {
    throw error(errc::empty_branch, "no points strictly outside the wedge");
  }
  return xi;
}

std::vector<double> outside_distances(const sample2& points, const wedge& w) {
  std::vector<double> d;
  d.reserve(points.size());
  for (const point2& p : points) {
    const double above = p.x2 - w.a_u * p.x1;
    const double below = w.a_l * p.x1 - p.x2;
    if (above > 0.0) {
      d.push_back(above / std::sqrt(1.0 + w.a_u * w.a_u));
    } else if (below > 0.0) {
      d.push_back(below / std::sqrt(1.0 + w.a_l * w.a_l));
    }
  }
  return d;
}

}  // namespace

double estimate_alpha0(const sample2& points, const wedge& w, std::size_t k,
                       branch_selection branches) {
  const std::vector<double> xi = pooled_xi(points, w, branches);
  if (xi.size() < k + 1) {
    throw error(errc::insufficient_exceedances,
                "only " + std::to_string(xi.size()) +
                    " exceedances, need k + 1 = " + std::to_string(k + 1));
  }
  return hill(xi, k);
}

double estimate_b0(const sample2& points, const wedge& w, std::size_t k) {
  if (k < 1) {
    throw error(errc::invalid_argument, "estimate_b0 needs k >= 1");
  }
  std::vector<double> d = outside_distances(points, w);
  if (d.size() < k) {
    throw error(errc::insufficient_exceedances,
                "only " + std::to_string(d.size()) +
                    " points outside the wedge, need " + std::to_string(k));
  }
  std::nth_element(d.begin(), d.begin() + (k - 1), d.end(), std::greater<>());
  return d[k - 1];
}

std::size_t implied_k_for_b0(const sample2& points, const wedge& w,
                             double b0) {
  if (!(b0 > 0.0)) {
    throw error(errc::nonpositive_threshold, "threshold must be positive");
  }
  const std::vector<double> d = outside_distances(points, w);
  return static_cast<std::size_t>(
      std::count_if(d.begin(), d.end(), [&](double v) { return v >= b0; }));
}

namespace {

constexpr double k_nan = std::numeric_limits<double>::quiet_NaN();

std::vector<std::size_t> linear_k_grid(std::size_t lo, std::size_t hi,
                                       std::size_t count) {
  std::vector<std::size_t> grid;
  if (hi < lo || count == 0) return grid;
  const std::size_t span = hi - lo;
  const std::size_t m = std::min(count, span + 1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t k = m == 1 ? lo : lo + (span * i) / (m - 1);
    if (grid.empty() || k > grid.back()) grid.push_back(k);
  }
  return grid;
}

curve_summary summarize(estimator_curve curve) {
  curve_summary s;
  s.curve = std::move(curve);
  if (s.curve.entries.empty()) {
    s.mean = k_nan;
    s.max_dev = k_nan;
    return s;
  }
  double sum = 0.0, max_dev = 0.0;
  for (const curve_entry& e : s.curve.entries) {
    sum += e.value;
    max_dev = std::max(max_dev, std::abs(e.value - 1.0));
  }
  s.mean = sum / static_cast<double>(s.curve.entries.size());
  s.max_dev = max_dev;
  return s;
}

const char* side_word(branch side) {
  return side == branch::above_wedge ? "above" : "below";
}

}  // namespace

hrv_report detect(const sample2& points, const hrv_config& config) {
  hrv_report rep;
  rep.config = config;
  rep.n = points.size();
  const std::size_t n = points.size();
  if (n < 1000) {
    rep.flags.push_back("sample smaller than 1000 points");
  }

  const std::size_t k_marginal =
      config.k_marginal ? config.k_marginal
                        : std::max<std::size_t>(10, n / 30);
  const std::size_t k_alpha0 =
      config.k_alpha0 ? config.k_alpha0 : std::max<std::size_t>(10, n / 60);
  rep.k_used = k_alpha0;

  std::vector<double> x1(n), x2(n);
  for (std::size_t i = 0; i < n; ++i) {
    x1[i] = points[i].x1;
    x2[i] = points[i].x2;
  }
  const auto marginal = [&](const std::vector<double>& v) {
    return config.marginal == marginal_estimator::hill_estimator
               ? hill(v, k_marginal)
               : qq_slope(v, k_marginal);
  };
  rep.alpha_hat_x1 = marginal(x1);
  rep.alpha_hat_x2 = marginal(x2);
  rep.alpha_hat = 0.5 * (rep.alpha_hat_x1 + rep.alpha_hat_x2);

  if (config.wedge_override) {
    rep.w = *config.wedge_override;
    rep.wedge_fitted = false;
  } else {
    rep.w = fit_wedge(top_k_angles(points, config.k_angles), config.q_low,
                      config.q_high);
    rep.wedge_fitted = true;
  }
  if (!rep.w.brackets_diagonal()) {
    rep.flags.push_back("wedge does not bracket the diagonal");
  }
  if (rep.w.is_degenerate()) {
    rep.flags.push_back("wedge degenerates to a single ray");
  }

  const hillish_options hopts{config.jitter_ties, config.jitter_seed};
  const std::size_t stable_lo = std::max<std::size_t>(
      2, static_cast<std::size_t>(config.stable_low_frac *
                                  static_cast<double>(n)));
  const std::size_t stable_hi = static_cast<std::size_t>(
      config.stable_high_frac * static_cast<double>(n));

  std::vector<double> pooled;
  for (branch side : {branch::above_wedge, branch::below_wedge}) {
    std::optional<branch_diagnostics>& slot =
        side == branch::above_wedge ? rep.above : rep.below;
    std::optional<double>& alpha0_slot = side == branch::above_wedge
                                             ? rep.alpha0_above
                                             : rep.alpha0_below;
    branch_data bd;
    try {
      bd = branch_transform(points, rep.w, side);
    } catch (const error& e) {
      if (e.code() != errc::empty_branch) throw;
      rep.flags.push_back(std::string("no exceedances ") + side_word(side) +
                          " the wedge");
      continue;
    }
    pooled.insert(pooled.end(), bd.xi.begin(), bd.xi.end());

    branch_diagnostics diag;
    diag.n_points = bd.xi.size();
    if (bd.xi.size() >= k_alpha0 + 1) {
      try {
        diag.alpha0 = hill(bd.xi, k_alpha0);
      } catch (const error& e) {
        if (e.code() != errc::degenerate_fit) throw;
      }
    }
    if (!diag.alpha0) {
      rep.flags.push_back(std::string("alpha0 unavailable ") +
                          side_word(side) + " the wedge");
    }
    alpha0_slot = diag.alpha0;

    const std::size_t hi = std::min(stable_hi, bd.xi.size());
    const std::vector<std::size_t> grid =
        linear_k_grid(stable_lo, hi, config.hillish_grid_points);
    if (grid.empty()) {
      rep.flags.push_back(std::string("too few points ") + side_word(side) +
                          " the wedge for the product diagnostic");
      diag.hillish_eta = summarize({});
      diag.hillish_neg_eta = summarize({});
    } else {
      auto [eta_curve, neg_curve] =
          hillish_pair_curve(bd.xi, bd.eta, grid, hopts);
      diag.hillish_eta = summarize(std::move(eta_curve));
      diag.hillish_neg_eta = summarize(std::move(neg_curve));
    }
    slot = std::move(diag);
  }

  if (pooled.size() >= k_alpha0 + 1) {
    try {
      rep.alpha0_pooled = hill(pooled, k_alpha0);
    } catch (const error& e) {
      if (e.code() != errc::degenerate_fit) throw;
    }
  }
  try {
    rep.b0_hat = estimate_b0(points, rep.w, k_alpha0);
  } catch (const error& e) {
    if (e.code() != errc::insufficient_exceedances) throw;
  }

  // Verdict per branch: the residual index must clear the marginal one by
  // the margin and both product-diagnostic curves must hug 1.
  for (branch side : {branch::above_wedge, branch::below_wedge}) {
    std::optional<branch_diagnostics>& slot =
        side == branch::above_wedge ? rep.above : rep.below;
    if (!slot) continue;
    branch_diagnostics& diag = *slot;
    const std::optional<double>& basis =
        config.pool_branches ? rep.alpha0_pooled : diag.alpha0;
    const bool curves_ok = !diag.hillish_eta.curve.entries.empty() &&
                           diag.hillish_eta.max_dev <= config.hillish_band &&
                           diag.hillish_neg_eta.max_dev <= config.hillish_band;
    if (basis && *basis > rep.alpha_hat + config.alpha0_margin && curves_ok) {
      diag.hrv_supported = true;
      rep.flags.push_back(std::string("hrv supported ") + side_word(side) +
                          " the wedge");
    } else {
      if (basis && std::abs(*basis - rep.alpha_hat) <= config.alpha0_margin) {
        rep.flags.push_back(std::string("alpha0 within margin of alpha ") +
                            side_word(side) + " the wedge: hrv doubtful");
      }
      if (!curves_ok && !diag.hillish_eta.curve.entries.empty()) {
        rep.flags.push_back(std::string("product diagnostic outside band ") +
                            side_word(side) + " the wedge");
      }
    }
    rep.hrv_supported = rep.hrv_supported || diag.hrv_supported;
  }

  return rep;
}

}  // namespace wedgetail
