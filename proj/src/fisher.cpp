#include "stepfit/fisher.hpp"

#include <limits>
#include <vector>

#include "stepfit/kernels.hpp"

namespace stepfit {

StepFunction fisher_step_fit(const WeightedSeries& series, std::int64_t b,
                             const FitOptions& opts, FitReport* report) {
  const std::int64_t n = series.size();
  dp::check_b(b, n);
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
    for (std::int64_t i = 1; i <= rowmax; ++i) {
      const kernels::RowMin r =
          k.row_scan(ps.cum_w(), ps.cum_wy(), ps.cum_wy2(),
                     ws.err_prev.data(), i, i, rowmax);
      ws.err_cur[static_cast<std::size_t>(i)] = r.value;
      jopt_row[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(r.arg);
      ws.evals_by_step[static_cast<std::size_t>(c - 1)] += rowmax - i + 1;
    }
    ws.finish_step(c);
  }

  StepFunction fn = dp::emit(ws, ps, b, /*reduced=*/false);
  dp::fill_report(std::move(ws), opts, report);
  return fn;
}

StepFunction fisher_reduced_fit(const WeightedSeries& series, std::int64_t b,
                                const FitOptions& opts, FitReport* report) {
  const std::int64_t n = series.size();
  dp::check_b(b, n);
  const PrefixSums ps(series);
  dp::Workspace ws(n, b);
  const kernels::KernelSet& k = kernels::active_set();

  for (std::int64_t i = 1; i <= n; ++i) {
    ws.err_prev[static_cast<std::size_t>(i)] = ps.sse({i, n});
    ws.jopt[1][static_cast<std::size_t>(i)] = static_cast<std::int32_t>(n);
  }
  ws.evals_by_step[0] += n;
  ws.finish_step(1);

  // first_level[r]: level of the first positively weighted step of the stored
  // (c-1)-step solution on [r, n]; DBL_MAX when that tail carries no weight
  // at all. bound[j] gates candidate break j: mean(i, j) <= bound[j].
  std::vector<double> first_level(static_cast<std::size_t>(n) + 2, 0.0);
  std::vector<double> bound(static_cast<std::size_t>(n) + 1, 0.0);

  for (std::int64_t c = 2; c <= b; ++c) {
    const auto& jopt_prev = ws.jopt[static_cast<std::size_t>(c - 1)];
    for (std::int64_t r = n; r >= 1; --r) {
      const std::int64_t j = jopt_prev[static_cast<std::size_t>(r)];
      const Interval iv{r, j};
      if (ps.weight(iv) > 0.0) {
        first_level[static_cast<std::size_t>(r)] = ps.mean(iv);
      } else if (j >= n) {
        first_level[static_cast<std::size_t>(r)] =
            std::numeric_limits<double>::max();
      } else {
        first_level[static_cast<std::size_t>(r)] =
            first_level[static_cast<std::size_t>(j + 1)];
      }
    }
    for (std::int64_t j = 1; j <= n - 1; ++j) {
      bound[static_cast<std::size_t>(j)] =
          first_level[static_cast<std::size_t>(j + 1)];
    }

    auto& jopt_row = ws.jopt[static_cast<std::size_t>(c)];
    auto& evals = ws.evals_by_step[static_cast<std::size_t>(c - 1)];
    for (std::int64_t i = 1; i <= n - 1; ++i) {
      const kernels::RowMin r =
          k.bounded_row_scan(ps.cum_w(), ps.cum_wy(), ps.cum_wy2(),
                             ws.err_prev.data(), bound.data(), i, i, n - 1);
      evals += n - i;
      // the whole-tail step [i, n] competes as well; the smallest-j rule
      // means any feasible j < n wins ties against it
      const double single = ps.sse({i, n});
      evals += 1;
      if (r.arg < 0 || single < r.value) {
        ws.err_cur[static_cast<std::size_t>(i)] = single;
        jopt_row[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(n);
      } else {
        ws.err_cur[static_cast<std::size_t>(i)] = r.value;
        jopt_row[static_cast<std::size_t>(i)] =
            static_cast<std::int32_t>(r.arg);
      }
    }
    ws.err_cur[static_cast<std::size_t>(n)] = ps.sse({n, n});
    jopt_row[static_cast<std::size_t>(n)] = static_cast<std::int32_t>(n);
    ws.finish_step(c);
  }

  StepFunction fn = dp::emit(ws, ps, b, /*reduced=*/true);
  dp::fill_report(std::move(ws), opts, report);
  return fn;
}

}  // namespace stepfit
