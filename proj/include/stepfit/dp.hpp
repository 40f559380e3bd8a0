#pragma once
// Shared DP machinery: engine selection, evaluation accounting, the rolling
// error rows with the jopt backtracking table, and StepFunction emission.

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "stepfit/series.hpp"
#include "stepfit/step_function.hpp"

namespace stepfit {

enum class Engine { fisher, monotone, smawk };

const char* engine_name(Engine e);
Engine parse_engine(std::string_view name);  // throws std::invalid_argument

// Raised when an internal invariant breaks (a bug, never bad input).
struct internal_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct FitOptions {
  bool validate_isotonic = true;    // input check for monotone/smawk
  bool collect_jopt = false;        // keep the full jopt table in the report
  bool collect_level_counts = false;  // per-(c, level) evaluation tallies
};

struct LevelCount {
  std::int32_t step_count = 0;  // c
  std::int32_t level = 0;
  std::int64_t evals = 0;
  std::int64_t rows = 0;
};

struct FitReport {
  // Cost evaluations per step count c (index c-1). The c = 1 entry counts the
  // initialization row's sse evaluations.
  std::vector<std::int64_t> evals_by_step;
  // Optimal error for every step budget: error_by_step[c-1] = Err(1, c).
  std::vector<double> error_by_step;
  std::vector<LevelCount> level_counts;         // when collect_level_counts
  std::vector<std::vector<std::int32_t>> jopt;  // [c-1][i-1], when collect_jopt

  std::int64_t total_evals() const;
  // Largest per-c evaluation count over c >= 2; 0 when b == 1.
  std::int64_t max_evals_per_step() const;
};

namespace dp {

// Rolling Err rows plus the full jopt table needed for backtracking.
// Memory is O(b n); one workspace per call, never shared.
struct Workspace {
  std::int64_t n = 0;
  std::int64_t b = 0;
  std::vector<double> err_prev;  // Err(., c-1), indices 1..n (+ sentinel n+1)
  std::vector<double> err_cur;   // Err(., c) while step c is being filled
  std::vector<std::vector<std::int32_t>> jopt;  // jopt[c][i], c in 1..b
  std::vector<std::int64_t> evals_by_step;      // index c-1
  std::vector<double> error_by_step;            // Err(1, c), index c-1
  std::vector<LevelCount> level_counts;

  Workspace(std::int64_t n, std::int64_t b);
  // Records Err(1, c) and rolls the rows forward.
  void finish_step(std::int64_t c);
};

inline double errj(const PrefixSums& ps, const double* next_err, std::int64_t i,
                   std::int64_t j) {
  return interval_sse_raw(ps.cum_w(), ps.cum_wy(), ps.cum_wy2(), i, j) +
         next_err[j + 1];
}

// Backtracks jopt from (1, b) and builds the fitted function. In reduced mode
// a chain entry equal to n ends the function early (fewer than b steps).
StepFunction emit(const Workspace& ws, const PrefixSums& ps, std::int64_t b,
                  bool reduced);

// Levels for the given breaks: the interval mean per step. A zero-weight step
// takes the previous step's level, or the next positive step's level when it
// sits at the front.
std::vector<double> step_levels(const PrefixSums& ps,
                                const std::vector<std::int64_t>& breaks);

void fill_report(Workspace&& ws, const FitOptions& opts, FitReport* out);

void check_b(std::int64_t b, std::int64_t n);
void check_isotonic(const WeightedSeries& series);

}  // namespace dp

// Dispatches to fisher_step_fit / monotone_step_fit / smawk_step_fit.
StepFunction step_fit(Engine engine, const WeightedSeries& series,
                      std::int64_t b, const FitOptions& opts = {},
                      FitReport* report = nullptr);

}  // namespace stepfit
