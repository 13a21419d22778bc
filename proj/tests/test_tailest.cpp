// Univariate tail index machinery: hill, the exploration-exponent curve, the
// QQ slope estimator, concomitant ranks, and the product-measure diagnostic.
// Closed-form oracles use exact Pareto plug-in quantiles x_j = (j/(n+1))^{-1/a},
// for which the mean log-excess is log(k+1) - log(k!)/k up to the factor 1/a.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "wedgetail/errors.hpp"
#include "wedgetail/simulate.hpp"
#include "wedgetail/tail_estimators.hpp"

using namespace wedgetail;

namespace {

std::vector<double> pareto_quantiles(double alpha, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double u = static_cast<double>(i) / static_cast<double>(n + 1);
    out[i - 1] = std::pow(u, -1.0 / alpha);
  }
  return out;
}

double hill_on_quantiles(double alpha, std::size_t k) {
  const double kd = static_cast<double>(k);
  return alpha / (std::log(kd + 1.0) - std::lgamma(kd + 1.0) / kd);
}

}  // namespace

TEST_CASE("hill hand values") {
  const std::vector<double> data{std::exp(3.0), std::exp(2.0), std::exp(1.0)};
  CHECK(hill(data, 2) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  // Order does not matter.
  const std::vector<double> shuffled{std::exp(1.0), std::exp(3.0),
                                     std::exp(2.0)};
  CHECK(hill(shuffled, 2) == hill(data, 2));
}

TEST_CASE("hill recovers the index on exact quantiles") {
  const auto data = pareto_quantiles(1.0, 1000);
  const double h = hill(data, 100);
  CHECK(h == doctest::Approx(1.0).epsilon(0.15));
  CHECK(h == doctest::Approx(hill_on_quantiles(1.0, 100)).epsilon(1e-9));
}

TEST_CASE("hill is scale invariant") {
  const auto data = pareto_quantiles(2.0, 500);
  const double base = hill(data, 50);
  for (double c : {1e-6, 0.5, 3.0, 1e8}) {
    std::vector<double> scaled(data);
    for (double& v : scaled) v *= c;
    CHECK(hill(scaled, 50) == doctest::Approx(base).epsilon(1e-12));
  }
}

TEST_CASE("hill failure modes") {
  CHECK_THROWS_AS(hill(std::vector<double>{1.0, 2.0, 3.0}, 1), error);
  try {
    hill(std::vector<double>{1.0, 2.0}, 2);  // needs k+1 = 3 values
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::insufficient_data);
  }
  try {
    // Enough raw entries, not enough positive ones.
    hill(std::vector<double>{-1.0, 0.0, 2.0, 3.0}, 2);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::nonpositive_tail);
  }
  try {
    hill(std::vector<double>{5.0, 5.0, 5.0, 5.0}, 2);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_fit);
  }
}

TEST_CASE("alt_hill_curve follows k = ceil(n^theta) with dedupe") {
  const auto data = pareto_quantiles(2.0, 10000);
  const auto grid = default_theta_grid();
  REQUIRE(grid.size() == 86);
  CHECK(grid.front() == doctest::Approx(0.10));
  CHECK(grid.back() == doctest::Approx(0.95));

  const estimator_curve curve = alt_hill_curve(data, grid);
  CHECK(curve.has_theta);
  REQUIRE(!curve.entries.empty());
  // n = 1e4, theta = 0.10: ceil(10^0.4) = 3.
  CHECK(curve.entries.front().k == 3);
  CHECK(curve.entries.front().theta == doctest::Approx(0.10));
  for (std::size_t i = 1; i < curve.entries.size(); ++i) {
    CHECK(curve.entries[i].k > curve.entries[i - 1].k);
  }
  // Every retained k carries the plain hill value at that k.
  for (const auto& e : curve.entries) {
    CHECK(e.value == doctest::Approx(hill_on_quantiles(2.0, e.k)).epsilon(1e-9));
    if (e.k >= 100) {
      CHECK(e.value == doctest::Approx(2.0).epsilon(0.05));
    }
  }

  CHECK_THROWS_AS(alt_hill_curve(data, std::vector<double>{}), error);
  CHECK_THROWS_AS(alt_hill_curve(data, std::vector<double>{0.0, 0.5}), error);
  CHECK_THROWS_AS(alt_hill_curve(data, std::vector<double>{0.5, 1.0}), error);
  CHECK_THROWS_AS(alt_hill_curve(data, std::vector<double>{0.5, 0.5}), error);
  CHECK_THROWS_AS(alt_hill_curve(data, std::vector<double>{0.6, 0.4}), error);
}

TEST_CASE("qq_slope is exact on exact quantiles") {
  // For plug-in quantiles the ordinates are exactly (1/alpha) times the
  // abscissae, so the regression slope carries no bias at all.
  for (double alpha : {1.0, 2.5}) {
    const auto data = pareto_quantiles(alpha, 1000);
    const double q = qq_slope(data, 100);
    CHECK(q == doctest::Approx(alpha).epsilon(1e-9));
    CHECK(q == doctest::Approx(alpha).epsilon(0.05));
  }
}

TEST_CASE("qq_slope scale invariance and failure modes") {
  const auto data = pareto_quantiles(1.5, 400);
  const double base = qq_slope(data, 60);
  std::vector<double> scaled(data);
  for (double& v : scaled) v *= 7.25;
  CHECK(qq_slope(scaled, 60) == doctest::Approx(base).epsilon(1e-12));

  CHECK_THROWS_AS(qq_slope(data, 1), error);
  try {
    qq_slope(std::vector<double>{3.0, 3.0, 3.0, 3.0, 3.0}, 3);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::degenerate_fit);
  }
}

TEST_CASE("rank_concomitants hand cases") {
  {
    const std::vector<double> xi{5.0, 3.0};
    const std::vector<double> eta{10.0, 20.0};
    const auto cr = rank_concomitants(xi, eta, 2);
    REQUIRE(cr.k == 2);
    REQUIRE(cr.ranks.size() == 2);
    CHECK(cr.ranks[0] == 1);
    CHECK(cr.ranks[1] == 2);
  }
  {
    // Ties in eta count with <=, so equal values share the top rank.
    const std::vector<double> xi{3.0, 2.0, 1.0};
    const std::vector<double> eta{7.0, 7.0, 7.0};
    const auto cr = rank_concomitants(xi, eta, 3);
    CHECK(cr.ranks == std::vector<std::size_t>{3, 3, 3});
  }
  {
    // xi ascending input: companions are taken in xi-descending order.
    const std::vector<double> xi{1.0, 2.0, 3.0};
    const std::vector<double> eta{9.0, 8.0, 7.0};
    const auto cr = rank_concomitants(xi, eta, 3);
    CHECK(cr.ranks == std::vector<std::size_t>{1, 2, 3});
  }
  {
    // Tied xi keep input order.
    const std::vector<double> xi{2.0, 2.0, 1.0};
    const std::vector<double> eta{10.0, 20.0, 30.0};
    const auto cr = rank_concomitants(xi, eta, 2);
    CHECK(cr.ranks == std::vector<std::size_t>{1, 2});
  }
}

TEST_CASE("rank_concomitants ignores the input permutation") {
  std::vector<double> xi{4.0, 1.0, 3.0, 2.0, 5.0};
  std::vector<double> eta{0.1, 0.5, 0.3, 0.2, 0.4};
  const auto base = rank_concomitants(xi, eta, 4);
  // Rotate the pairs; distinct values make the selection order-free.
  std::vector<std::size_t> perm{2, 4, 0, 1, 3};
  std::vector<double> xi_p(5), eta_p(5);
  for (std::size_t i = 0; i < 5; ++i) {
    xi_p[i] = xi[perm[i]];
    eta_p[i] = eta[perm[i]];
  }
  const auto permuted = rank_concomitants(xi_p, eta_p, 4);
  CHECK(permuted.ranks == base.ranks);
}

TEST_CASE("rank_concomitants failure modes") {
  const std::vector<double> xi{1.0, 2.0, 3.0};
  const std::vector<double> eta{1.0, 2.0};
  CHECK_THROWS_AS(rank_concomitants(xi, eta, 2), error);
  try {
    rank_concomitants(xi, eta, 2);
  } catch (const error& e) {
    CHECK(e.code() == errc::length_mismatch);
  }
  const std::vector<double> eta3{1.0, 2.0, 3.0};
  CHECK_THROWS_AS(rank_concomitants(xi, eta3, 1), error);
  CHECK_THROWS_AS(rank_concomitants(xi, eta3, 4), error);
}

TEST_CASE("hillish hand values") {
  {
    const std::vector<double> xi{5.0, 3.0};
    const std::vector<double> eta{10.0, 20.0};
    const double v = hillish(xi, eta, 2);
    const double expect = std::log(2.0) * std::log(2.0) / 2.0;
    CHECK(v == doctest::Approx(expect).epsilon(1e-15));
    CHECK(v == doctest::Approx(0.2402265069591007).epsilon(1e-12));
  }
  {
    // Companion ranks aligned with the xi order: N_j = j.
    const std::vector<double> xi{4.0, 3.0, 2.0, 1.0};
    const std::vector<double> eta{1.0, 2.0, 3.0, 4.0};
    const double v = hillish(xi, eta, 4);
    double expect = 0.0;
    for (int j = 1; j <= 4; ++j) {
      const double t = std::log(4.0 / j);
      expect += t * t;
    }
    expect /= 4.0;
    CHECK(v == doctest::Approx(expect).epsilon(1e-15));
    CHECK(v == doctest::Approx(0.6212565111002897).epsilon(1e-12));
  }
}

TEST_CASE("hillish is invariant under increasing transforms of each margin") {
  const std::vector<double> xi{0.7, 2.1, 1.3, 0.2, 3.3, 1.9};
  const std::vector<double> eta{5.0, 1.0, 4.0, 6.0, 2.0, 3.0};
  const double base = hillish(xi, eta, 4);
  std::vector<double> xi_t(xi.size()), eta_t(eta.size());
  std::transform(xi.begin(), xi.end(), xi_t.begin(),
                 [](double v) { return std::exp(v); });
  std::transform(eta.begin(), eta.end(), eta_t.begin(),
                 [](double v) { return 2.0 * v + 5.0; });
  // Ranks in both margins are untouched, so the statistic is bit-identical.
  CHECK(hillish(xi_t, eta, 4) == base);
  CHECK(hillish(xi, eta_t, 4) == base);
  CHECK(hillish(xi_t, eta_t, 4) == base);
}

TEST_CASE("hillish on fully dependent margins") {
  // eta == xi pushes every companion rank to k+1-j, giving the closed sum
  // (1/k) sum log(k/j) log(k/(k+1-j)), far below 1.
  const std::size_t n = 1000;
  std::vector<double> xi(n);
  std::iota(xi.begin(), xi.end(), 1.0);
  const std::size_t k = 1000;
  const double v = hillish(xi, xi, k);
  double expect = 0.0;
  for (std::size_t j = 1; j <= k; ++j) {
    expect += std::log(static_cast<double>(k) / static_cast<double>(j)) *
              std::log(static_cast<double>(k) /
                       static_cast<double>(k + 1 - j));
  }
  expect /= static_cast<double>(k);
  CHECK(v == doctest::Approx(expect).epsilon(1e-12));
  CHECK(std::abs(v - 1.0) > 0.3);
}

TEST_CASE("hillish near 1 for independent heavy tails") {
  // Two independent Pareto streams; the limit is a product measure.
  const auto xi = sample_pareto(1.0, 100000, 1);
  const auto eta = sample_pareto(1.0, 100000, 1001);
  const double pos = hillish(xi, eta, 1000);
  CHECK(pos == doctest::Approx(1.0).epsilon(0.1));
  std::vector<double> neg(eta.size());
  std::transform(eta.begin(), eta.end(), neg.begin(),
                 [](double e) { return -e; });
  CHECK(hillish(xi, neg, 1000) == doctest::Approx(1.0).epsilon(0.1));
}

TEST_CASE("hillish_pair_curve evaluates both signs on the grid") {
  const std::vector<double> xi{5.0, 3.0};
  const std::vector<double> eta{10.0, 20.0};
  const std::vector<std::size_t> grid{2};
  const auto [pos, neg] = hillish_pair_curve(xi, eta, grid);
  REQUIRE(pos.entries.size() == 1);
  REQUIRE(neg.entries.size() == 1);
  CHECK(pos.entries[0].k == 2);
  CHECK(pos.entries[0].value ==
        doctest::Approx(std::log(2.0) * std::log(2.0) / 2.0).epsilon(1e-15));
  // Negating eta reverses the companion ranks: (1,2) becomes (2,1), and the
  // j=1 term vanishes with log(k/N_1) = 0.
  CHECK(neg.entries[0].value == 0.0);

  CHECK_THROWS_AS(
      hillish_pair_curve(xi, eta, std::vector<std::size_t>{}), error);
  CHECK_THROWS_AS(
      hillish_pair_curve(xi, eta, std::vector<std::size_t>{2, 2}), error);
}

TEST_CASE("hillish jitter is seeded and deterministic") {
  const auto xi = sample_pareto(1.5, 2000, 7);
  std::vector<double> eta(xi.size(), 42.0);  // fully tied companions
  const double plain = hillish(xi, eta, 200);
  CHECK(plain == 0.0);  // every rank is k, every log factor 0

  hillish_options opts;
  opts.jitter_ties = true;
  opts.jitter_seed = 3;
  const double j1 = hillish(xi, eta, 200, opts);
  const double j2 = hillish(xi, eta, 200, opts);
  CHECK(j1 == j2);
  CHECK(j1 != 0.0);
  opts.jitter_seed = 4;
  CHECK(hillish(xi, eta, 200, opts) != j1);
}
