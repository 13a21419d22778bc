#include "wedgetail/simulate.hpp"

#include <cmath>
#include <random>

#include "wedgetail/errors.hpp"

namespace wedgetail {

namespace {

// 53-bit uniform in (0, 1]. Explicit extraction instead of
// std::uniform_real_distribution, whose mapping is implementation-defined;
// this keeps streams bit-identical for a given seed everywhere mt19937_64 is.
double next_uniform(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

double pareto_from_uniform(double u, double alpha) {
  return std::pow(u, -1.0 / alpha);
}

}  // namespace

std::vector<double> sample_pareto(double alpha, std::size_t n,
                                  std::uint64_t seed) {
  if (!(alpha > 0.0)) {
    throw error(errc::nonpositive_alpha, "tail index must be positive");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> out(n);
  for (double& z : out) {
    z = pareto_from_uniform(next_uniform(rng), alpha);
  }
  return out;
}

// Both generators consume exactly four uniforms per observation, in the
// fixed order (mixture coin, heavy radius, light radius, angle/second coin),
// so a prefix of the stream generates a prefix of the sample.

sample2 gen_example1(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  sample2 out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool diag = next_uniform(rng) < 0.5;
    const double z1 = pareto_from_uniform(next_uniform(rng), 1.5);
    const double z2 = pareto_from_uniform(next_uniform(rng), 2.5);
    const bool steep = next_uniform(rng) < 0.5;
    if (diag) {
      out.push_back({z1, z1});
    } else {
      out.push_back({z2, steep ? 1.5 * z2 : 0.5 * z2});
    }
  }
  return out;
}

sample2 gen_example2(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  sample2 out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool central = next_uniform(rng) < 0.5;
    const double r1 = pareto_from_uniform(next_uniform(rng), 1.5);
    const double r2 = pareto_from_uniform(next_uniform(rng), 2.5);
    const double u = next_uniform(rng);
    double r, theta;
    if (central) {
      r = r1;
      theta = 0.4 + 0.2 * u;
    } else {
      r = r2;
      // Inverse CDF of Uniform([0, 0.4) union [0.6, 1]): the two halves of
      // u map affinely onto the two intervals.
      theta = u < 0.5 ? 0.8 * u : 0.6 + 0.8 * (u - 0.5);
    }
    // Round the larger share once and take the smaller as its exact
    // complement: the difference is then representable (Sterbenz), so
    // x1 + x2 reproduces the drawn radius bit for bit.
    double x1, x2;
    if (theta >= 0.5) {
      x1 = r * theta;
      x2 = r - x1;
    } else {
      x2 = r * (1.0 - theta);
      x1 = r - x2;
    }
    out.push_back({x1, x2});
  }
  return out;
}

sample2 generate(const sim_config& config) {
  if (config.n == 0) {
    throw error(errc::invalid_argument, "sample size must be at least 1");
  }
  return config.model == sim_model::example1
             ? gen_example1(config.n, config.seed)
             : gen_example2(config.n, config.seed);
}

}  // namespace wedgetail
