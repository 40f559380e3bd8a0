#include "stepfit/oracle.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "stepfit/dp.hpp"

namespace stepfit {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_cap(std::int64_t n, std::int64_t max_n) {
  if (n > max_n) {
    throw std::invalid_argument("oracle refuses n=" + std::to_string(n) +
                                " above its cap of " + std::to_string(max_n));
  }
}

// Visits every increasing cut vector c_1 < ... < c_{b-1} within [1, n-1] in
// lexicographic order. Iterative odometer, no recursion.
template <class Visit>
void for_each_cuts(std::int64_t n, std::int64_t b, Visit&& visit) {
  const std::int64_t k = b - 1;
  std::vector<std::int64_t> cuts(static_cast<std::size_t>(k));
  std::iota(cuts.begin(), cuts.end(), std::int64_t{1});
  if (k == 0) {
    visit(cuts);
    return;
  }
  while (true) {
    visit(cuts);
    std::int64_t pos = k - 1;
    while (pos >= 0 &&
           cuts[static_cast<std::size_t>(pos)] == n - k + pos) {
      --pos;
    }
    if (pos < 0) break;
    ++cuts[static_cast<std::size_t>(pos)];
    for (std::int64_t q = pos + 1; q < k; ++q) {
      cuts[static_cast<std::size_t>(q)] =
          cuts[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
}

double composition_error(const PrefixSums& ps,
                         const std::vector<std::int64_t>& cuts) {
  double total = 0.0;
  std::int64_t lo = 1;
  for (const std::int64_t cut : cuts) {
    total += ps.sse({lo, cut});
    lo = cut + 1;
  }
  total += ps.sse({lo, ps.size()});
  return total;
}

// Nondecreasing means over the positively weighted steps; zero-weight steps
// can take any level and never break feasibility.
bool isotonic_feasible(const PrefixSums& ps,
                       const std::vector<std::int64_t>& cuts) {
  double prev = -kInf;
  std::int64_t lo = 1;
  const std::int64_t n = ps.size();
  for (std::int64_t s = 0; s <= static_cast<std::int64_t>(cuts.size()); ++s) {
    const std::int64_t hi =
        (s < static_cast<std::int64_t>(cuts.size()))
            ? cuts[static_cast<std::size_t>(s)]
            : n;
    const Interval iv{lo, hi};
    if (ps.weight(iv) > 0.0) {
      const double mean = ps.mean(iv);
      if (mean < prev) return false;
      prev = mean;
    }
    lo = hi + 1;
  }
  return true;
}

StepFunction make_fit(const PrefixSums& ps,
                      const std::vector<std::int64_t>& cuts, double error) {
  StepFunction fn;
  fn.breaks.assign(cuts.begin(), cuts.end());
  fn.breaks.push_back(ps.size());
  fn.levels = dp::step_levels(ps, fn.breaks);
  fn.error = error;
  return fn;
}

WeightedSeries sorted_by_value(const WeightedSeries& series) {
  const std::int64_t n = series.size();
  std::vector<std::int64_t> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), std::int64_t{1});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::int64_t a, std::int64_t b) {
                     return series.value(a) < series.value(b);
                   });
  std::vector<double> values;
  std::vector<double> weights;
  values.reserve(order.size());
  weights.reserve(order.size());
  for (const std::int64_t idx : order) {
    values.push_back(series.value(idx));
    weights.push_back(series.weight(idx));
  }
  return WeightedSeries(std::move(values), std::move(weights));
}

}  // namespace

StepFunction brute_step_fit(const WeightedSeries& series, std::int64_t b,
                            std::int64_t max_n) {
  const std::int64_t n = series.size();
  check_cap(n, max_n);
  dp::check_b(b, n);
  const PrefixSums ps(series);
  double best = kInf;
  std::vector<std::int64_t> best_cuts;
  for_each_cuts(n, b, [&](const std::vector<std::int64_t>& cuts) {
    const double err = composition_error(ps, cuts);
    if (err < best) {
      best = err;
      best_cuts = cuts;
    }
  });
  return make_fit(ps, best_cuts, best);
}

StepFunction brute_reduced_fit(const WeightedSeries& series, std::int64_t b,
                               std::int64_t max_n) {
  const std::int64_t n = series.size();
  check_cap(n, max_n);
  dp::check_b(b, n);
  const PrefixSums ps(series);
  double best = kInf;
  std::vector<std::int64_t> best_cuts;
  for (std::int64_t steps = 1; steps <= b; ++steps) {
    for_each_cuts(n, steps, [&](const std::vector<std::int64_t>& cuts) {
      if (!isotonic_feasible(ps, cuts)) return;
      const double err = composition_error(ps, cuts);
      if (err < best) {
        best = err;
        best_cuts = cuts;
      }
    });
  }
  return make_fit(ps, best_cuts, best);
}

double brute_kmeans_sse(const WeightedSeries& series, std::int64_t k,
                        std::int64_t max_n) {
  const std::int64_t n = series.size();
  check_cap(n, max_n);
  dp::check_b(k, n);
  const WeightedSeries sorted = sorted_by_value(series);
  const PrefixSums ps(sorted);
  double best = kInf;
  for_each_cuts(n, k, [&](const std::vector<std::int64_t>& cuts) {
    best = std::min(best, composition_error(ps, cuts));
  });
  return best;
}

std::vector<double> brute_step_errors(const WeightedSeries& series,
                                      std::int64_t max_n) {
  const std::int64_t n = series.size();
  check_cap(n, max_n);
  const PrefixSums ps(series);
  std::vector<double> best(static_cast<std::size_t>(n), kInf);
  for (std::int64_t b = 1; b <= n; ++b) {
    for_each_cuts(n, b, [&](const std::vector<std::int64_t>& cuts) {
      auto& slot = best[static_cast<std::size_t>(b - 1)];
      slot = std::min(slot, composition_error(ps, cuts));
    });
  }
  return best;
}

std::vector<double> brute_reduced_errors(const WeightedSeries& series,
                                         std::int64_t max_n) {
  const std::int64_t n = series.size();
  check_cap(n, max_n);
  const PrefixSums ps(series);
  std::vector<double> best(static_cast<std::size_t>(n), kInf);
  for (std::int64_t b = 1; b <= n; ++b) {
    for_each_cuts(n, b, [&](const std::vector<std::int64_t>& cuts) {
      if (!isotonic_feasible(ps, cuts)) return;
      auto& slot = best[static_cast<std::size_t>(b - 1)];
      slot = std::min(slot, composition_error(ps, cuts));
    });
  }
  // "at most b steps": carry the best smaller budget forward
  for (std::size_t b = 1; b < best.size(); ++b) {
    best[b] = std::min(best[b], best[b - 1]);
  }
  return best;
}

std::vector<double> brute_kmeans_errors(const WeightedSeries& series,
                                        std::int64_t max_n) {
  const std::int64_t n = series.size();
  check_cap(n, max_n);
  const WeightedSeries sorted = sorted_by_value(series);
  const PrefixSums ps(sorted);
  std::vector<double> best(static_cast<std::size_t>(n), kInf);
  for (std::int64_t k = 1; k <= n; ++k) {
    for_each_cuts(n, k, [&](const std::vector<std::int64_t>& cuts) {
      auto& slot = best[static_cast<std::size_t>(k - 1)];
      slot = std::min(slot, composition_error(ps, cuts));
    });
  }
  return best;
}

}  // namespace stepfit
