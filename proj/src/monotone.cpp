#include "stepfit/monotone.hpp"

#include <algorithm>
#include <bit>

#include "stepfit/kernels.hpp"

namespace stepfit {

namespace {

inline int floor_log2(std::int64_t v) {
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(v))) - 1;
}

}  // namespace

StepFunction monotone_step_fit(const WeightedSeries& series, std::int64_t b,
                               const FitOptions& opts, FitReport* report) {
  const std::int64_t n = series.size();
  dp::check_b(b, n);
  if (opts.validate_isotonic) dp::check_isotonic(series);
  const PrefixSums ps(series);
  dp::Workspace ws(n, b);
  const kernels::KernelSet& k = kernels::active_set();

  for (std::int64_t i = 1; i <= n; ++i) {
    ws.err_prev[static_cast<std::size_t>(i)] = ps.sse({i, n});
    ws.jopt[1][static_cast<std::size_t>(i)] = static_cast<std::int32_t>(n);
  }
  ws.evals_by_step[0] += n;
  ws.finish_step(1);

  for (std::int64_t c = 2; c <= b; ++c) {
    const std::int64_t rowmax = n - c + 1;
    auto& jopt_row = ws.jopt[static_cast<std::size_t>(c)];
    for (int level = floor_log2(rowmax); level >= 0; --level) {
      const std::int64_t step = std::int64_t{1} << level;
      std::int64_t level_evals = 0;
      std::int64_t level_rows = 0;
      for (std::int64_t i = step; i <= rowmax; i += 2 * step) {
        // neighbors at +-step are multiples of 2^(level+1), already filled
        const std::int64_t lo =
            (i == step)
                ? i
                : std::max(i, static_cast<std::int64_t>(
                                  jopt_row[static_cast<std::size_t>(i - step)]));
        const std::int64_t hi =
            (i + step > rowmax)
                ? rowmax
                : jopt_row[static_cast<std::size_t>(i + step)];
        if (lo > hi) throw internal_error("monotone: empty search window");
        const kernels::RowMin r =
            k.row_scan(ps.cum_w(), ps.cum_wy(), ps.cum_wy2(),
                       ws.err_prev.data(), i, lo, hi);
        ws.err_cur[static_cast<std::size_t>(i)] = r.value;
        jopt_row[static_cast<std::size_t>(i)] =
            static_cast<std::int32_t>(r.arg);
        level_evals += hi - lo + 1;
        ++level_rows;
      }
      ws.evals_by_step[static_cast<std::size_t>(c - 1)] += level_evals;
      if (opts.collect_level_counts) {
        ws.level_counts.push_back({static_cast<std::int32_t>(c), level,
                                   level_evals, level_rows});
      }
    }
    ws.finish_step(c);
  }

  StepFunction fn = dp::emit(ws, ps, b, /*reduced=*/false);
  dp::fill_report(std::move(ws), opts, report);
  return fn;
}

}  // namespace stepfit
