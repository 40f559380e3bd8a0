#pragma once
// Piecewise-constant fit: right endpoints of the steps, one level per step,
// and the total weighted squared error.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "stepfit/series.hpp"

namespace stepfit {

struct StepFunction {
  std::vector<std::int64_t> breaks;  // right endpoint per step; back() == n
  std::vector<double> levels;        // fitted value per step
  double error = 0.0;

  std::int64_t steps() const { return static_cast<std::int64_t>(breaks.size()); }

  // Interval of the k-th step, k in 1..steps().
  Interval step(std::int64_t k) const {
    const auto idx = static_cast<std::size_t>(k - 1);
    return {k == 1 ? 1 : breaks[idx - 1] + 1, breaks[idx]};
  }

  // Fitted value at the 1-based index i.
  double value_at(std::int64_t i) const {
    const auto it = std::lower_bound(breaks.begin(), breaks.end(), i);
    return levels[static_cast<std::size_t>(it - breaks.begin())];
  }
};

}  // namespace stepfit
