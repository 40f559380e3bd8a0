#pragma once
// End-to-end pipelines. Reduced isotonic regression of arbitrary data: run
// PAV, collapse the pieces to weighted points, fit b' = min(b, m) steps on
// the points with the chosen engine, and expand the breaks back to original
// indices. Also the 1-D weighted k-means reduction and the per-b error sweep.

#include <cstdint>
#include <vector>

#include "stepfit/dp.hpp"
#include "stepfit/pav.hpp"

namespace stepfit {

struct ReducedFit {
  StepFunction fit;  // on the original index space
  PieceList pieces;
  double point_error = 0.0;      // engine error on the collapsed points
  double within_piece_sse = 0.0;  // error already paid inside the pieces
  // fit.error == point_error + within_piece_sse
};

ReducedFit reduced_isotonic_fit(const WeightedSeries& series, std::int64_t b,
                                Engine engine = Engine::smawk,
                                const FitOptions& opts = {},
                                FitReport* report = nullptr);

struct KMeansFit {
  std::vector<Interval> clusters;  // contiguous ranges of the sorted order
  std::vector<std::vector<std::int64_t>> members;  // original 1-based indices
  std::vector<double> centers;
  double sse = 0.0;
};

// Weighted k-means of unordered 1-D data: stable-sort by value, fit k steps
// on the sorted series (smawk engine), map the steps back to clusters.
KMeansFit kmeans_1d(const WeightedSeries& series, std::int64_t k);

struct SweepPoint {
  std::int64_t b = 0;
  double error = 0.0;
};

// Optimal reduced-isotonic error for every b in 1..b_max from a single DP
// run; errors are nonincreasing and reach the PAV error at b >= m.
std::vector<SweepPoint> fit_sweep(const WeightedSeries& series,
                                  std::int64_t b_max,
                                  Engine engine = Engine::smawk);

}  // namespace stepfit
