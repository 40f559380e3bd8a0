#include <doctest.h>

#include <random>
#include <stdexcept>
#include <vector>

#include "stepfit/fisher.hpp"
#include "stepfit/oracle.hpp"
#include "stepfit/pav.hpp"
#include "testutil.hpp"

using namespace stepfit;
using testutil::rel_close;

TEST_CASE("two optimal 2-step fits of 1,2,3: the smallest-j one is returned") {
  const auto fn = fisher_step_fit(WeightedSeries::unweighted({1, 2, 3}), 2);
  CHECK(fn.error == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(fn.breaks == std::vector<std::int64_t>{1, 3});
  CHECK(fn.levels[0] == 1.0);
  CHECK(fn.levels[1] == 2.5);
}

TEST_CASE("b = n interpolates with zero error") {
  const auto fn = fisher_step_fit(WeightedSeries::unweighted({4, -1, 7}), 3);
  CHECK(fn.error == 0.0);
  CHECK(fn.steps() == 3);
}

TEST_CASE("even ramp, three steps") {
  const auto fn =
      fisher_step_fit(WeightedSeries::unweighted({0, 2, 4, 6, 8, 10}), 3);
  CHECK(fn.breaks == std::vector<std::int64_t>{2, 4, 6});
  CHECK(fn.levels == std::vector<double>{1, 5, 9});
  CHECK(fn.error == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("b out of range is rejected") {
  const auto s = WeightedSeries::unweighted({1, 2});
  CHECK_THROWS_AS(fisher_step_fit(s, 0), std::invalid_argument);
  CHECK_THROWS_AS(fisher_step_fit(s, 3), std::invalid_argument);
  CHECK_THROWS_AS(fisher_reduced_fit(s, -1), std::invalid_argument);
}

TEST_CASE("reduced fit pools a decreasing run into one step") {
  const auto fn = fisher_reduced_fit(WeightedSeries::unweighted({3, 2, 1}), 2);
  REQUIRE(fn.steps() == 1);
  CHECK(fn.levels[0] == 2.0);
  CHECK(fn.error == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("reduced fit of the even ramp uses fresh breaks per budget") {
  const WeightedSeries ramp = WeightedSeries::unweighted({0, 2, 4, 6, 8, 10});
  const auto two = fisher_reduced_fit(ramp, 2);
  CHECK(two.breaks == std::vector<std::int64_t>{3, 6});
  CHECK(two.levels == std::vector<double>{2, 8});
  CHECK(two.error == doctest::Approx(16.0).epsilon(1e-12));
  const auto three = fisher_reduced_fit(ramp, 3);
  CHECK(three.breaks == std::vector<std::int64_t>{2, 4, 6});
  CHECK(three.levels == std::vector<double>{1, 5, 9});
  CHECK(three.error == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("reduced fit of the spike example starts on [1,4]") {
  const auto fn =
      fisher_reduced_fit(WeightedSeries::unweighted({7, 8, 0, 6, 9, 10}), 2);
  REQUIRE(fn.steps() == 2);
  CHECK(fn.breaks == std::vector<std::int64_t>{4, 6});
  CHECK(fn.levels[0] == 5.25);
  CHECK(fn.levels[1] == 9.5);
}

TEST_CASE("fisher matches the oracle on random instances") {
  std::mt19937_64 gen(606);
  for (int rep = 0; rep < 120; ++rep) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(gen() % 12);
    const auto s = testutil::random_series(gen, n);
    const auto step_best = brute_step_errors(s);
    const auto reduced_best = brute_reduced_errors(s);
    double prev_step = 1e300;
    double prev_reduced = 1e300;
    for (std::int64_t b = 1; b <= n; ++b) {
      const auto sf = fisher_step_fit(s, b);
      const auto rf = fisher_reduced_fit(s, b);
      CHECK(rel_close(sf.error, step_best[static_cast<std::size_t>(b - 1)],
                      1e-9));
      CHECK(rel_close(rf.error, reduced_best[static_cast<std::size_t>(b - 1)],
                      1e-9));
      // the isotonic constraint can only cost error
      CHECK(rf.error >= sf.error - 1e-9);
      // errors shrink as the budget grows
      CHECK(sf.error <= prev_step + 1e-12);
      CHECK(rf.error <= prev_reduced + 1e-12);
      prev_step = sf.error;
      prev_reduced = rf.error;
      // reduced levels are nondecreasing
      for (std::size_t k = 1; k < rf.levels.size(); ++k) {
        CHECK(rf.levels[k] >= rf.levels[k - 1]);
      }
    }
  }
}

TEST_CASE("reduced fit with b >= m reproduces the pav error exactly") {
  std::mt19937_64 gen(707);
  for (int rep = 0; rep < 100; ++rep) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(gen() % 12);
    const auto s = testutil::random_series(gen, n);
    const auto pf = pav_fit(s);
    const auto rf = fisher_reduced_fit(s, n);
    CHECK(rel_close(rf.error, pf.fit.error, 1e-12));
  }
}

TEST_CASE("workspace invariants: eval count, jopt range, per-b errors") {
  std::mt19937_64 gen(808);
  for (int rep = 0; rep < 40; ++rep) {
    const std::int64_t n = 2 + static_cast<std::int64_t>(gen() % 24);
    const std::int64_t b = 1 + static_cast<std::int64_t>(gen() % n);
    const auto s = testutil::random_series(gen, n);
    FitOptions opts;
    opts.collect_jopt = true;
    FitReport report;
    fisher_step_fit(s, b, opts, &report);
    CHECK(report.total_evals() <= b * n * n);
    REQUIRE(static_cast<std::int64_t>(report.jopt.size()) == b);
    for (std::int64_t c = 1; c <= b; ++c) {
      const auto& row = report.jopt[static_cast<std::size_t>(c - 1)];
      for (std::int64_t i = 1; i <= n - c + 1; ++i) {
        const std::int64_t j = row[static_cast<std::size_t>(i - 1)];
        if (c == 1) {
          CHECK(j == n);
        } else {
          CHECK(j >= i);
          CHECK(j <= n - c + 1);
        }
      }
    }
    for (std::size_t c = 1; c < report.error_by_step.size(); ++c) {
      CHECK(report.error_by_step[c] <= report.error_by_step[c - 1] + 1e-12);
      CHECK(report.error_by_step[c] >= 0.0);
    }
  }
}
