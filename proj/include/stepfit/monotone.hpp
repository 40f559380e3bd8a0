#pragma once
// Θ(b n log n) b-step DP for isotonic inputs. With the smallest-minimizer tie
// rule the optimal first-step endpoints are nondecreasing in the row index,
// so rows are filled level by level (all multiples of 2^level) and each row's
// scan window is bracketed by its already-computed neighbors.

#include <cstdint>

#include "stepfit/dp.hpp"

namespace stepfit {

// Requires nondecreasing values (validated unless opts.validate_isotonic is
// off). For isotonic data the result is simultaneously an optimal reduced
// isotonic regression.
StepFunction monotone_step_fit(const WeightedSeries& series, std::int64_t b,
                               const FitOptions& opts = {},
                               FitReport* report = nullptr);

}  // namespace stepfit
