// Angular summaries of the largest observations: top-k L1 angles, the
// quantile-based wedge fit, and the empirical measure on the distance-1
// locus. Ray mixtures make the expected atoms exact.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "wedgetail/angular.hpp"
#include "wedgetail/errors.hpp"
#include "wedgetail/simulate.hpp"

using namespace wedgetail;

TEST_CASE("top_k_angles picks by decreasing L1 norm") {
  const sample2 pts{{10.0, 10.0}, {1.0, 0.0}, {0.0, 1.0}};
  auto a = top_k_angles(pts, 1);
  REQUIRE(a.thetas.size() == 1);
  CHECK(a.thetas[0] == 0.5);
  CHECK(a.norms[0] == 20.0);

  a = top_k_angles(pts, 3);
  REQUIRE(a.thetas.size() == 3);
  CHECK(a.thetas[0] == 0.5);
  // Norm tie between the axis points: input order decides.
  CHECK(a.thetas[1] == 1.0);
  CHECK(a.thetas[2] == 0.0);
  CHECK(a.norms[1] == 1.0);
  CHECK(a.norms[2] == 1.0);
}

TEST_CASE("top_k_angles failure modes") {
  const sample2 pts{{1.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(top_k_angles(pts, 0), error);
  try {
    top_k_angles(pts, 2);  // only one nonzero point
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::insufficient_data);
  }
}

TEST_CASE("top_k_angles is stable under input permutation") {
  const sample2 pts{{4.0, 1.0}, {1.0, 6.0}, {2.0, 2.0}, {9.0, 0.5}};
  const auto base = top_k_angles(pts, 3);
  const sample2 shuffled{{2.0, 2.0}, {9.0, 0.5}, {4.0, 1.0}, {1.0, 6.0}};
  const auto again = top_k_angles(shuffled, 3);
  CHECK(again.thetas == base.thetas);
  CHECK(again.norms == base.norms);
}

TEST_CASE("nearest_rank_quantile hand values") {
  const std::vector<double> v{1.0, 2.0, 3.0, 4.0};
  CHECK(nearest_rank_quantile(v, 0.5) == 2.0);
  CHECK(nearest_rank_quantile(v, 0.25) == 1.0);
  CHECK(nearest_rank_quantile(v, 0.0) == 1.0);
  CHECK(nearest_rank_quantile(v, 1.0) == 4.0);
  CHECK(nearest_rank_quantile(v, 0.75) == 3.0);
}

TEST_CASE("fit_wedge maps angle quantiles to slopes") {
  angular_sample angles;
  angles.thetas = {0.4, 0.45, 0.5, 0.55, 0.6};
  angles.norms = {5.0, 4.0, 3.0, 2.0, 1.0};
  angles.k = 5;
  const wedge w = fit_wedge(angles, 0.0, 1.0);
  CHECK(w.a_l == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(w.a_u == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(w.brackets_diagonal());

  // Inner quantiles trim the extremes: q = 0.25 -> 0.45, q = 0.75 -> 0.55.
  const wedge inner = fit_wedge(angles, 0.25, 0.75);
  CHECK(inner.a_l == doctest::Approx(1.0 / 0.55 - 1.0).epsilon(1e-12));
  CHECK(inner.a_u == doctest::Approx(1.0 / 0.45 - 1.0).epsilon(1e-12));
}

TEST_CASE("fit_wedge degenerate and failure modes") {
  angular_sample one;
  one.thetas = {0.5};
  one.norms = {1.0};
  one.k = 1;
  const wedge w = fit_wedge(one, 0.05, 0.95);
  CHECK(w.is_degenerate());
  CHECK(w.is_diagonal());

  angular_sample empty;
  CHECK_THROWS_AS(fit_wedge(empty, 0.05, 0.95), error);
  try {
    fit_wedge(empty, 0.05, 0.95);
  } catch (const error& e) {
    CHECK(e.code() == errc::empty_angles);
  }
  CHECK_THROWS_AS(fit_wedge(one, -0.1, 0.95), error);
  CHECK_THROWS_AS(fit_wedge(one, 0.05, 1.1), error);
  CHECK_THROWS_AS(fit_wedge(one, 0.6, 0.4), error);
  CHECK_THROWS_AS(fit_wedge(one, 0.5, 0.5), error);
}

TEST_CASE("fit_wedge ignores the scale of the underlying points") {
  sample2 pts;
  for (int i = 0; i < 50; ++i) {
    const double t = 0.35 + 0.3 * static_cast<double>(i) / 49.0;
    const double r = 1.0 + static_cast<double>(i % 7);
    pts.push_back({r * t, r * (1.0 - t)});
  }
  const wedge base = fit_wedge(top_k_angles(pts, 50), 0.1, 0.9);
  sample2 scaled(pts);
  for (point2& p : scaled) {
    p.x1 *= 1e3;
    p.x2 *= 1e3;
  }
  const wedge again = fit_wedge(top_k_angles(scaled, 50), 0.1, 0.9);
  CHECK(again.a_l == doctest::Approx(base.a_l).epsilon(1e-12));
  CHECK(again.a_u == doctest::Approx(base.a_u).epsilon(1e-12));
}

TEST_CASE("empirical_s0 hand case") {
  const wedge diag(1.0, 1.0);
  const sample2 pts{{5.0, 0.0}, {0.0, 4.0}, {3.0, 0.5}};
  const auto m = empirical_s0(pts, diag, 3);
  REQUIRE(m.atoms.size() == 3);
  double total = 0.0;
  for (const auto& atom : m.atoms) {
    CHECK(atom.weight == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    total += atom.weight;
    const auto unit = dist_to_wedge(atom.mu, diag);
    CHECK(unit.d == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  // Ordered by decreasing distance: (5,0) first, then (0,4), then (3,0.5).
  CHECK(m.atoms[0].mu.x1 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(m.atoms[0].mu.x2 == 0.0);

  const sample2 with_inside{{5.0, 0.0}, {0.0, 4.0}, {3.0, 0.5}, {1.0, 1.0}};
  CHECK_THROWS_AS(empirical_s0(with_inside, diag, 4), error);
  try {
    empirical_s0(with_inside, diag, 4);
  } catch (const error& e) {
    CHECK(e.code() == errc::insufficient_exceedances);
  }
  CHECK_THROWS_AS(empirical_s0(pts, diag, 0), error);
}

TEST_CASE("empirical_s0 concentrates on the two off-diagonal rays") {
  // The three-ray mixture seen from the diagonal wedge: every exceedance
  // lies on the slope-1.5 or slope-0.5 ray, whose rescaled positions are
  // sqrt(2)*(2,3) and sqrt(2)*(2,1).
  const sample2 pts = gen_example1(100000, 4);
  const wedge diag(1.0, 1.0);
  const auto m = empirical_s0(pts, diag, 300);
  const double root2 = std::sqrt(2.0);
  const point2 steep{2.0 * root2, 3.0 * root2};
  const point2 shallow{2.0 * root2, 1.0 * root2};
  double steep_mass = 0.0, shallow_mass = 0.0, stray_mass = 0.0;
  for (const auto& atom : m.atoms) {
    if (std::abs(atom.mu.x1 - steep.x1) < 1e-6 &&
        std::abs(atom.mu.x2 - steep.x2) < 1e-6) {
      steep_mass += atom.weight;
    } else if (std::abs(atom.mu.x1 - shallow.x1) < 1e-6 &&
               std::abs(atom.mu.x2 - shallow.x2) < 1e-6) {
      shallow_mass += atom.weight;
    } else {
      stray_mass += atom.weight;
    }
  }
  CHECK(stray_mass == 0.0);
  CHECK(std::abs(steep_mass - 0.5) < 0.08);
  CHECK(std::abs(shallow_mass - 0.5) < 0.08);
  CHECK(steep_mass + shallow_mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("largest simplex-mixture observations sit in the central band") {
  // The heavy component spreads over angles [0.4, 0.6]; the top of the
  // sample is dominated by it, with a few light-component stragglers.
  const sample2 pts = gen_example2(30000, 4);
  const auto a = top_k_angles(pts, 100);
  std::size_t in_band = 0;
  for (double t : a.thetas) {
    if (t >= 0.38 && t <= 0.62) ++in_band;
  }
  CHECK(in_band >= 90);
}
