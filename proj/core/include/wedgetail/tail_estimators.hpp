#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wedgetail/types.hpp"

namespace wedgetail {

// Hill estimator on the k largest of the strictly positive values:
//   alpha = [ (1/k) sum_{i<=k} log(X_(i) / X_(k+1)) ]^{-1}
// with X_(1) >= X_(2) >= ... the decreasing order statistics. Nonpositive
// values are discarded first; at least k+1 positive values and k >= 2 are
// required. Scale-invariant.
double hill(std::span<const double> data, std::size_t k);

// Hill estimate per exploration exponent theta, with k = ceil(n^theta)
// clamped to [2, n-1]. Entries keep k strictly increasing: when consecutive
// theta values land on the same k, the first one wins. The grid must be
// strictly increasing inside (0,1).
estimator_curve alt_hill_curve(std::span<const double> data,
                               std::span<const double> theta_grid);

// Default exploration grid: 0.10, 0.11, ..., 0.95.
std::vector<double> default_theta_grid();

// Tail index from the least-squares slope s of the QQ point set
//   { (log((k+1)/j), log(X_(j)/X_(k+1))) : j = 1..k },
// returning 1/s. The intercept absorbs scale. Fails as degenerate when the
// ordinates carry no slope (constant tail).
double qq_slope(std::span<const double> data, std::size_t k);

// Ranks of the eta values paired with the k largest xi values. Pairs are
// ordered by xi decreasing (ties keep original input order); eta*_i is the
// companion of the i-th largest xi, and
//   N_j = #{ l <= k : eta*_l <= eta*_j },
// so ties in eta are counted with <=.
struct concomitant_ranks {
  std::size_t k = 0;
  std::vector<std::size_t> ranks;
};

concomitant_ranks rank_concomitants(std::span<const double> xi,
                                    std::span<const double> eta,
                                    std::size_t k);

// Options for hillish. Heavily discrete eta (integer degrees) makes the
// <=-count pile up; the optional jitter adds seeded uniform noise of relative
// scale 1e-9 to eta before ranking, off by default.
struct hillish_options {
  bool jitter_ties = false;
  std::uint64_t jitter_seed = 0;
};

// Hillish statistic over concomitant ranks:
//   (1/k) sum_{j<=k} log(k/j) * log(k/N_j).
// Tends to 1 (for both eta and -eta) exactly when the conditional limit is a
// product measure. Invariant under strictly increasing transforms of xi and,
// separately, of eta.
double hillish(std::span<const double> xi, std::span<const double> eta,
               std::size_t k, const hillish_options& options = {});

// The product-measure diagnostic needs both signs: first curve uses eta,
// second uses -eta, over the same strictly increasing k grid.
std::pair<estimator_curve, estimator_curve> hillish_pair_curve(
    std::span<const double> xi, std::span<const double> eta,
    std::span<const std::size_t> k_grid, const hillish_options& options = {});

}  // namespace wedgetail
