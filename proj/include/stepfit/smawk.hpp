#pragma once
// Θ(b n) b-step DP for isotonic inputs. The cost matrix is totally monotone,
// so a SMAWK column elimination pass per step count keeps, for every level,
// only the candidate columns that can still be a row minimum; the row loop
// then scans just those survivors inside its bracketed window.

#include <cstdint>
#include <span>
#include <vector>

#include "stepfit/dp.hpp"

namespace stepfit {

// Surviving candidate columns per level. levels[0] always holds 1..n; each
// deeper level is a strictly increasing subset of the one before it.
struct JValuesTable {
  std::vector<std::vector<std::int32_t>> levels;
};

// Column reduction for the implicit cost matrix sse(i, j) + prev_err[j + 1]
// at step count c. prev_err spans indices 0..n+1; columns left of the
// diagonal or past n-c+1 count as +inf and are never evaluated. eval_count
// accumulates the cost evaluations performed.
JValuesTable determine_jvalues(const PrefixSums& ps,
                               std::span<const double> prev_err,
                               std::int64_t c, std::int64_t& eval_count);

StepFunction smawk_step_fit(const WeightedSeries& series, std::int64_t b,
                            const FitOptions& opts = {},
                            FitReport* report = nullptr);

}  // namespace stepfit
