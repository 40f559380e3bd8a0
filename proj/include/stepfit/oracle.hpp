#pragma once
// Exhaustive reference solvers for small instances. Every equivalence test
// and frozen expected value traces back to these. Guarded by a size cap so a
// stray large input cannot trigger an exponential run.

#include <cstdint>
#include <vector>

#include "stepfit/series.hpp"
#include "stepfit/step_function.hpp"

namespace stepfit {

// Minimum over all C(n-1, b-1) break compositions; ties keep the
// lexicographically smallest breaks.
StepFunction brute_step_fit(const WeightedSeries& series, std::int64_t b,
                            std::int64_t max_n = 16);

// Same enumeration over at most b steps, restricted to fits whose positively
// weighted step means are nondecreasing.
StepFunction brute_reduced_fit(const WeightedSeries& series, std::int64_t b,
                               std::int64_t max_n = 16);

// Minimum weighted within-cluster squared error over all k-compositions of
// the sorted order.
double brute_kmeans_sse(const WeightedSeries& series, std::int64_t k,
                        std::int64_t max_n = 12);

// Minima for every feasible step/cluster budget (index b-1) from a single
// enumeration pass over all compositions.
std::vector<double> brute_step_errors(const WeightedSeries& series,
                                      std::int64_t max_n = 16);
std::vector<double> brute_reduced_errors(const WeightedSeries& series,
                                         std::int64_t max_n = 16);
std::vector<double> brute_kmeans_errors(const WeightedSeries& series,
                                        std::int64_t max_n = 12);

}  // namespace stepfit
