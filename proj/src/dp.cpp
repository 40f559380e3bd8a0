#include "stepfit/dp.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "stepfit/fisher.hpp"
#include "stepfit/monotone.hpp"
#include "stepfit/smawk.hpp"

namespace stepfit {

const char* engine_name(Engine e) {
  switch (e) {
    case Engine::fisher:
      return "fisher";
    case Engine::monotone:
      return "monotone";
    case Engine::smawk:
      return "smawk";
  }
  return "?";
}

Engine parse_engine(std::string_view name) {
  if (name == "fisher") return Engine::fisher;
  if (name == "monotone") return Engine::monotone;
  if (name == "smawk") return Engine::smawk;
  throw std::invalid_argument("unknown engine: " + std::string(name));
}

std::int64_t FitReport::total_evals() const {
  return std::accumulate(evals_by_step.begin(), evals_by_step.end(),
                         std::int64_t{0});
}

std::int64_t FitReport::max_evals_per_step() const {
  std::int64_t m = 0;
  for (std::size_t c = 1; c < evals_by_step.size(); ++c) {
    m = std::max(m, evals_by_step[c]);
  }
  return m;
}

namespace dp {

Workspace::Workspace(std::int64_t n_in, std::int64_t b_in) : n(n_in), b(b_in) {
  const auto row = static_cast<std::size_t>(n) + 2;
  err_prev.assign(row, 0.0);
  err_cur.assign(row, 0.0);
  jopt.resize(static_cast<std::size_t>(b) + 1);
  for (std::int64_t c = 1; c <= b; ++c) {
    jopt[static_cast<std::size_t>(c)].assign(row, 0);
  }
  evals_by_step.assign(static_cast<std::size_t>(b), 0);
  error_by_step.assign(static_cast<std::size_t>(b), 0.0);
}

void Workspace::finish_step(std::int64_t c) {
  error_by_step[static_cast<std::size_t>(c - 1)] =
      (c == 1) ? err_prev[1] : err_cur[1];
  if (c > 1) std::swap(err_prev, err_cur);
}

std::vector<double> step_levels(const PrefixSums& ps,
                                const std::vector<std::int64_t>& breaks) {
  const std::size_t k = breaks.size();
  std::vector<double> levels(k);
  std::vector<bool> weighted(k);
  std::int64_t lo = 1;
  for (std::size_t s = 0; s < k; ++s) {
    const Interval iv{lo, breaks[s]};
    if (ps.weight(iv) > 0.0) {
      levels[s] = ps.mean(iv);
      weighted[s] = true;
    }
    lo = breaks[s] + 1;
  }
  // zero-weight steps take the previous level; leading ones take the next
  for (std::size_t s = 1; s < k; ++s) {
    if (!weighted[s] && weighted[s - 1]) {
      levels[s] = levels[s - 1];
      weighted[s] = true;
    }
  }
  for (std::size_t s = k; s-- > 1;) {
    if (!weighted[s - 1] && weighted[s]) {
      levels[s - 1] = levels[s];
      weighted[s - 1] = true;
    }
  }
  return levels;
}

StepFunction emit(const Workspace& ws, const PrefixSums& ps, std::int64_t b,
                  bool reduced) {
  StepFunction fn;
  fn.breaks.reserve(static_cast<std::size_t>(b));
  std::int64_t cur = 1;
  for (std::int64_t c = b; c >= 1; --c) {
    const std::int64_t j = ws.jopt[static_cast<std::size_t>(c)]
                                  [static_cast<std::size_t>(cur)];
    if (j < cur || j > ws.n) {
      throw internal_error("backtrack produced an invalid break");
    }
    fn.breaks.push_back(j);
    if (j == ws.n) break;
    cur = j + 1;
  }
  if (fn.breaks.back() != ws.n) {
    throw internal_error("backtrack did not reach the end of the series");
  }
  if (!reduced && fn.steps() != b) {
    throw internal_error("step fit emitted the wrong number of steps");
  }
  fn.levels = step_levels(ps, fn.breaks);
  fn.error = ws.error_by_step[static_cast<std::size_t>(b - 1)];
  return fn;
}

void fill_report(Workspace&& ws, const FitOptions& opts, FitReport* out) {
  if (out == nullptr) return;
  out->evals_by_step = std::move(ws.evals_by_step);
  out->error_by_step = std::move(ws.error_by_step);
  out->level_counts = std::move(ws.level_counts);
  out->jopt.clear();
  if (opts.collect_jopt) {
    out->jopt.reserve(static_cast<std::size_t>(ws.b));
    for (std::int64_t c = 1; c <= ws.b; ++c) {
      const auto& row = ws.jopt[static_cast<std::size_t>(c)];
      out->jopt.emplace_back(row.begin() + 1, row.begin() + 1 + ws.n);
    }
  }
}

void check_b(std::int64_t b, std::int64_t n) {
  if (b < 1 || b > n) {
    throw std::invalid_argument("step count b must be in [1, n]; got b=" +
                                std::to_string(b) + " with n=" +
                                std::to_string(n));
  }
}

void check_isotonic(const WeightedSeries& series) {
  if (!series.is_isotonic()) {
    throw std::invalid_argument("input values must be nondecreasing");
  }
}

}  // namespace dp

StepFunction step_fit(Engine engine, const WeightedSeries& series,
                      std::int64_t b, const FitOptions& opts,
                      FitReport* report) {
  switch (engine) {
    case Engine::fisher:
      return fisher_step_fit(series, b, opts, report);
    case Engine::monotone:
      return monotone_step_fit(series, b, opts, report);
    case Engine::smawk:
      return smawk_step_fit(series, b, opts, report);
  }
  throw std::invalid_argument("unknown engine");
}

}  // namespace stepfit
