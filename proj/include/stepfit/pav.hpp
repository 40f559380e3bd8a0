#pragma once
// Unrestricted weighted L2 isotonic regression by pool-adjacent-violators,
// in one linear scan. Emits both the fitted function and the pieces collapsed
// to weighted points for the reduced pipeline.

#include <cstdint>
#include <vector>

#include "stepfit/series.hpp"
#include "stepfit/step_function.hpp"

namespace stepfit {

struct Piece {
  Interval range;
  double mean = 0.0;
  double weight = 0.0;
  double sse = 0.0;
};

// Contiguous partition of [1, n]; piece means strictly increase (blocks with
// equal means are pooled).
struct PieceList {
  std::vector<Piece> pieces;
  std::int64_t count() const { return static_cast<std::int64_t>(pieces.size()); }
};

struct PavFit {
  StepFunction fit;
  PieceList pieces;
};

PavFit pav_fit(const WeightedSeries& series);

// Each piece as one weighted point (piece mean, piece weight). The values are
// strictly increasing and every weight is positive.
WeightedSeries piece_points(const PieceList& pieces);

}  // namespace stepfit
