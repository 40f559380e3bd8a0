#include "stepfit/reduced.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "stepfit/smawk.hpp"

namespace stepfit {

ReducedFit reduced_isotonic_fit(const WeightedSeries& series, std::int64_t b,
                                Engine engine, const FitOptions& opts,
                                FitReport* report) {
  dp::check_b(b, series.size());
  PavFit pav = pav_fit(series);
  const std::int64_t m = pav.pieces.count();
  const std::int64_t b_points = std::min(b, m);

  const WeightedSeries points = piece_points(pav.pieces);
  FitOptions point_opts = opts;
  point_opts.validate_isotonic = false;  // piece means strictly increase
  const StepFunction on_points =
      step_fit(engine, points, b_points, point_opts, report);

  double within = 0.0;
  for (const Piece& p : pav.pieces.pieces) within += p.sse;

  ReducedFit out;
  out.pieces = std::move(pav.pieces);
  out.point_error = on_points.error;
  out.within_piece_sse = within;
  out.fit.levels = on_points.levels;
  out.fit.breaks.reserve(on_points.breaks.size());
  for (const std::int64_t pk : on_points.breaks) {
    out.fit.breaks.push_back(
        out.pieces.pieces[static_cast<std::size_t>(pk - 1)].range.hi);
  }
  // merging pieces leaves the within-piece error untouched, so the totals add
  out.fit.error = on_points.error + within;
  return out;
}

KMeansFit kmeans_1d(const WeightedSeries& series, std::int64_t k) {
  const std::int64_t n = series.size();
  dp::check_b(k, n);

  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::int64_t{1});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b_) {
                     return series.value(a) < series.value(b_);
                   });

  std::vector<double> values(static_cast<std::size_t>(n));
  std::vector<double> weights(static_cast<std::size_t>(n));
  for (std::size_t s = 0; s < order.size(); ++s) {
    values[s] = series.value(order[s]);
    weights[s] = series.weight(order[s]);
  }
  const WeightedSeries sorted(std::move(values), std::move(weights));

  FitOptions opts;
  opts.validate_isotonic = false;  // sorted by construction
  const StepFunction fit = smawk_step_fit(sorted, k, opts);

  KMeansFit out;
  out.centers = fit.levels;
  out.sse = fit.error;
  out.clusters.reserve(static_cast<std::size_t>(fit.steps()));
  out.members.reserve(out.clusters.capacity());
  for (std::int64_t s = 1; s <= fit.steps(); ++s) {
    const Interval iv = fit.step(s);
    out.clusters.push_back(iv);
    std::vector<std::int64_t> ids;
    ids.reserve(static_cast<std::size_t>(iv.length()));
    for (std::int64_t pos = iv.lo; pos <= iv.hi; ++pos) {
      ids.push_back(order[static_cast<std::size_t>(pos - 1)]);
    }
    std::sort(ids.begin(), ids.end());
    out.members.push_back(std::move(ids));
  }
  return out;
}

std::vector<SweepPoint> fit_sweep(const WeightedSeries& series,
                                  std::int64_t b_max, Engine engine) {
  dp::check_b(b_max, series.size());
  PavFit pav = pav_fit(series);
  const std::int64_t m = pav.pieces.count();
  const std::int64_t b_points = std::min(b_max, m);

  const WeightedSeries points = piece_points(pav.pieces);
  FitOptions opts;
  opts.validate_isotonic = false;
  FitReport report;
  step_fit(engine, points, b_points, opts, &report);

  double within = 0.0;
  for (const Piece& p : pav.pieces.pieces) within += p.sse;

  std::vector<SweepPoint> out;
  out.reserve(static_cast<std::size_t>(b_max));
  for (std::int64_t b = 1; b <= b_max; ++b) {
    const std::int64_t eff = std::min(b, m);
    out.push_back(
        {b, report.error_by_step[static_cast<std::size_t>(eff - 1)] + within});
  }
  return out;
}

}  // namespace stepfit
