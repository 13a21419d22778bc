#include "wedgetail/types.hpp"

#include <algorithm>

#include "wedgetail/errors.hpp"

namespace wedgetail {

double nearest_rank_quantile(const std::vector<double>& sorted_values,
                             double q) {
  if (sorted_values.empty()) {
    throw error(errc::insufficient_data, "quantile of an empty sample");
  }
  if (!(q >= 0.0 && q <= 1.0)) {
    throw error(errc::invalid_argument, "quantile level must be in [0, 1]");
  }
  const auto m = sorted_values.size();
  auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(m)));
  rank = std::clamp<std::size_t>(rank, 1, m);
  return sorted_values[rank - 1];
}

}  // namespace wedgetail
