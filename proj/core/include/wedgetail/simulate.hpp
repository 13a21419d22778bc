#pragma once

#include <cstdint>
#include <vector>

#include "wedgetail/types.hpp"

namespace wedgetail {

// n i.i.d. standard Pareto(alpha) draws: P(Z > x) = x^{-alpha} for x >= 1,
// via inverse transform Z = (1-U)^{-1/alpha}. Same seed, same sequence,
// across platforms (the uniform extraction is pinned down to the bit).
std::vector<double> sample_pareto(double alpha, std::size_t n,
                                  std::uint64_t seed);

// Mixture of three rays through the origin. With probability 1/2 the point
// sits on the diagonal at a Pareto(1.5) radius; otherwise it sits on the
// slope-1.5 or slope-0.5 ray (equal odds) at a Pareto(2.5) scale. Every
// observation consumes exactly four uniforms so subsets of the stream stay
// aligned across n.
sample2 gen_example1(std::size_t n, std::uint64_t seed);

// Mixture on the simplex x1 + x2 = r: with probability 1/2 a Pareto(1.5)
// radius spread uniformly over angles theta in [0.4, 0.6], else a
// Pareto(2.5) radius over theta in [0, 0.4) union [0.6, 1]. X = r*(theta,
// 1-theta). Four uniforms per observation, as above.
sample2 gen_example2(std::size_t n, std::uint64_t seed);

enum class sim_model { example1, example2 };

struct sim_config {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  sim_model model = sim_model::example1;
};

sample2 generate(const sim_config& config);

}  // namespace wedgetail
