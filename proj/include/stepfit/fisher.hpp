#pragma once
// The Θ(b n²) baseline DP over all first-step endpoints, for arbitrary data.
// step fit: optimal b-step approximation with free levels.
// reduced fit: optimal isotonic (nondecreasing-level) fit with at most b
// steps; may return fewer steps when the optimum needs fewer.

#include <cstdint>

#include "stepfit/dp.hpp"

namespace stepfit {

StepFunction fisher_step_fit(const WeightedSeries& series, std::int64_t b,
                             const FitOptions& opts = {},
                             FitReport* report = nullptr);

StepFunction fisher_reduced_fit(const WeightedSeries& series, std::int64_t b,
                                const FitOptions& opts = {},
                                FitReport* report = nullptr);

}  // namespace stepfit
