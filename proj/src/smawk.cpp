#include "stepfit/smawk.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace stepfit {

namespace {

inline int floor_log2(std::int64_t v) {
  return static_cast<int>(std::bit_width(static_cast<std::uint64_t>(v))) - 1;
}

}  // namespace

// Iterative column elimination over the survivor list of the previous level.
// The current column's cost at the current row is cached, and each kept stack
// entry carries the cost it was kept with, so backing up a row re-evaluates
// nothing. Columns left of the diagonal or past n-c+1 count as +inf without
// being evaluated: a +inf current column is treated as "worse" even when the
// challenger is +inf too.
JValuesTable determine_jvalues(const PrefixSums& ps,
                               std::span<const double> prev_err,
                               std::int64_t c, std::int64_t& eval_count) {
  const std::int64_t n = ps.size();
  const std::int64_t rowmax = n - c + 1;
  const double inf = std::numeric_limits<double>::infinity();

  JValuesTable table;
  table.levels.resize(static_cast<std::size_t>(floor_log2(rowmax)) + 1);
  auto& ident = table.levels[0];
  ident.resize(static_cast<std::size_t>(n));
  std::iota(ident.begin(), ident.end(), std::int32_t{1});

  const auto cost = [&](std::int64_t row, std::int64_t col) {
    ++eval_count;
    return dp::errj(ps, prev_err.data(), row, col);
  };

  for (std::size_t level = 1; level < table.levels.size(); ++level) {
    const auto& from = table.levels[level - 1];
    auto& kept = table.levels[level];
    kept.clear();
    const std::int64_t step = std::int64_t{1} << level;

    std::vector<double> kept_cost;
    kept.reserve(static_cast<std::size_t>(rowmax / step) + 1);
    kept_cost.reserve(kept.capacity());

    std::int64_t i = step;
    std::int32_t j = from[0];
    double j_cost = 0.0;
    bool j_cost_valid = false;
    std::size_t next_index = 1;

    while (next_index < from.size()) {
      const std::int32_t next_j = from[next_index];
      bool keep_j = false;
      double next_cost = inf;
      bool next_cost_known = false;
      if (j >= i && j <= rowmax) {
        if (!j_cost_valid) {
          j_cost = cost(i, j);
          j_cost_valid = true;
        }
        if (next_j >= i && next_j <= rowmax) {
          next_cost = cost(i, next_j);
          next_cost_known = true;
        }
        keep_j = j_cost <= next_cost;
      }
      if (keep_j) {
        if (i + step > rowmax) {
          // at the last row: next_j can be a minimum of no row, drop it
          ++next_index;
        } else {
          kept.push_back(j);
          kept_cost.push_back(j_cost);
          j = next_j;
          j_cost_valid = false;
          ++next_index;
          i += step;
        }
      } else {
        // j loses at this row, so it loses at every later row: drop it and
        // re-examine the previously kept column one row up
        if (i > step) {
          i -= step;
          j = kept.back();
          j_cost = kept_cost.back();
          j_cost_valid = true;
          kept.pop_back();
          kept_cost.pop_back();
        } else {
          // the challenger's cost at this same row carries over
          j = next_j;
          j_cost = next_cost;
          j_cost_valid = next_cost_known;
          ++next_index;
        }
      }
    }
    kept.push_back(j);
  }
  return table;
}

StepFunction smawk_step_fit(const WeightedSeries& series, std::int64_t b,
                            const FitOptions& opts, FitReport* report) {
  const std::int64_t n = series.size();
  dp::check_b(b, n);
  if (opts.validate_isotonic) dp::check_isotonic(series);
  const PrefixSums ps(series);
  dp::Workspace ws(n, b);

  for (std::int64_t i = 1; i <= n; ++i) {
    ws.err_prev[static_cast<std::size_t>(i)] = ps.sse({i, n});
    ws.jopt[1][static_cast<std::size_t>(i)] = static_cast<std::int32_t>(n);
  }
  ws.evals_by_step[0] += n;
  ws.finish_step(1);

  const double inf = std::numeric_limits<double>::infinity();
  for (std::int64_t c = 2; c <= b; ++c) {
    const std::int64_t rowmax = n - c + 1;
    auto& evals = ws.evals_by_step[static_cast<std::size_t>(c - 1)];
    const JValuesTable table =
        determine_jvalues(ps, std::span<const double>(ws.err_prev), c, evals);
    auto& jopt_row = ws.jopt[static_cast<std::size_t>(c)];

    for (int level = static_cast<int>(table.levels.size()) - 1; level >= 0;
         --level) {
      const auto& cols = table.levels[static_cast<std::size_t>(level)];
      const auto ncols = static_cast<std::int64_t>(cols.size());
      const std::int64_t step = std::int64_t{1} << level;
      std::int64_t level_evals = 0;
      std::int64_t level_rows = 0;
      std::int64_t j_index = 0;

      for (std::int64_t i = step; i <= rowmax; i += 2 * step) {
        std::int64_t j_start;
        if (i == step) {
          j_start = i;
          j_index = 0;
        } else {
          j_start = std::max(i, static_cast<std::int64_t>(
                                    jopt_row[static_cast<std::size_t>(i - step)]));
        }
        const std::int64_t j_end =
            (i + step > rowmax)
                ? rowmax
                : jopt_row[static_cast<std::size_t>(i + step)];

        double best = inf;
        std::int64_t arg = -1;
        while (j_index < ncols &&
               cols[static_cast<std::size_t>(j_index)] <= j_end) {
          const std::int64_t j = cols[static_cast<std::size_t>(j_index)];
          if (j >= j_start) {
            const double v = dp::errj(ps, ws.err_prev.data(), i, j);
            ++level_evals;
            if (v < best) {
              best = v;
              arg = j;
            }
          }
          ++j_index;
        }
        // step back one column so the next row can share this window's
        // right endpoint
        if (j_index > 0) --j_index;
        if (arg < 0) {
          throw internal_error("smawk: survivor list missed the window");
        }
        ws.err_cur[static_cast<std::size_t>(i)] = best;
        jopt_row[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(arg);
        ++level_rows;
      }
      evals += level_evals;
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
