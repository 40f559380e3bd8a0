#include "stepfit/pav.hpp"

#include <vector>

namespace stepfit {

// One left-to-right scan over a stack of blocks; each point is pushed once
// and every merge removes a block, so the whole fit is Θ(n). Blocks are
// pooled while the left mean is >= the right mean, which also coalesces
// equal-mean blocks and leaves the final piece means strictly increasing.
PavFit pav_fit(const WeightedSeries& series) {
  const std::int64_t n = series.size();
  struct Block {
    std::int64_t start;
    double w;
    double wy;
  };
  std::vector<Block> stack;
  stack.reserve(64);

  for (std::int64_t i = 1; i <= n; ++i) {
    const double w = series.weight(i);
    if (w == 0.0) {
      // zero-weight points ride along with the block to their left; a leading
      // run is absorbed by the first real block below
      if (stack.empty()) stack.push_back({i, 0.0, 0.0});
      continue;
    }
    const double wy = w * series.value(i);
    if (!stack.empty() && stack.back().w == 0.0) {
      stack.back().w = w;
      stack.back().wy = wy;
    } else {
      stack.push_back({i, w, wy});
    }
    while (stack.size() >= 2) {
      Block& rb = stack[stack.size() - 1];
      Block& lb = stack[stack.size() - 2];
      // mean(lb) >= mean(rb), cross-multiplied (both weights positive)
      if (lb.wy * rb.w >= rb.wy * lb.w) {
        lb.w += rb.w;
        lb.wy += rb.wy;
        stack.pop_back();
      } else {
        break;
      }
    }
  }

  const PrefixSums ps(series);
  PavFit out;
  out.pieces.pieces.reserve(stack.size());
  out.fit.breaks.reserve(stack.size());
  out.fit.levels.reserve(stack.size());
  double total = 0.0;
  for (std::size_t k = 0; k < stack.size(); ++k) {
    const std::int64_t lo = stack[k].start;
    const std::int64_t hi = (k + 1 < stack.size()) ? stack[k + 1].start - 1 : n;
    const Interval iv{lo, hi};
    const double mean = ps.mean(iv);
    const double sse = ps.sse(iv);
    out.pieces.pieces.push_back({iv, mean, ps.weight(iv), sse});
    out.fit.breaks.push_back(hi);
    out.fit.levels.push_back(mean);
    total += sse;
  }
  out.fit.error = total;
  return out;
}

WeightedSeries piece_points(const PieceList& pieces) {
  std::vector<double> values;
  std::vector<double> weights;
  values.reserve(pieces.pieces.size());
  weights.reserve(pieces.pieces.size());
  for (const Piece& p : pieces.pieces) {
    values.push_back(p.mean);
    weights.push_back(p.weight);
  }
  return WeightedSeries(std::move(values), std::move(weights));
}

}  // namespace stepfit
