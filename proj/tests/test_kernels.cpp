#include <doctest.h>

#include <cstring>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "stepfit/kernels.hpp"
#include "stepfit/series.hpp"
#include "testutil.hpp"

using namespace stepfit;

namespace {

struct Fixture {
  PrefixSums ps;
  std::vector<double> next_err;
  std::vector<double> bound;
};

Fixture make_fixture(std::mt19937_64& gen, std::int64_t n) {
  testutil::GenOptions opts;
  opts.allow_zero_weights = true;
  Fixture f{PrefixSums(testutil::random_series(gen, n, opts)),
            std::vector<double>(static_cast<std::size_t>(n) + 2, 0.0),
            std::vector<double>(static_cast<std::size_t>(n) + 1, 0.0)};
  for (auto& e : f.next_err) e = testutil::u01(gen) * 50.0;
  for (std::size_t j = 0; j < f.bound.size(); ++j) {
    const auto roll = gen() % 8;
    if (roll == 0) {
      f.bound[j] = std::numeric_limits<double>::max();  // no constraint
    } else if (roll == 1) {
      f.bound[j] = -100.0;  // infeasible for any positively weighted step
    } else {
      f.bound[j] = testutil::u01(gen) * 20.0 - 10.0;
    }
  }
  return f;
}

bool bits_equal(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("kernel selection") {
  CHECK(kernels::available(kernels::Isa::scalar));
  const kernels::Isa before = kernels::active();
  kernels::select(kernels::Isa::scalar);
  CHECK(kernels::active() == kernels::Isa::scalar);
  CHECK(std::string(kernels::active_set().name) == "scalar");
  if (kernels::available(kernels::Isa::avx2)) {
    kernels::select(kernels::Isa::avx2);
    CHECK(std::string(kernels::active_set().name) == "avx2");
  } else {
    CHECK_THROWS_AS(kernels::select(kernels::Isa::avx2),
                    std::invalid_argument);
  }
  kernels::select(before);
}

TEST_CASE("scalar row scan finds the smallest minimizer") {
  // constant series: every candidate costs next_err[j + 1]; ties go left
  const PrefixSums ps(WeightedSeries::unweighted({2.0, 2.0, 2.0, 2.0}));
  std::vector<double> next_err{0.0, 9.0, 3.0, 3.0, 7.0, 8.0};
  const auto& k = kernels::kernel_set(kernels::Isa::scalar);
  const auto r = k.row_scan(ps.cum_w(), ps.cum_wy(), ps.cum_wy2(),
                            next_err.data(), 1, 1, 4);
  CHECK(r.arg == 1);
  CHECK(r.value == 3.0);
}

TEST_CASE("bounded scan drops infeasible candidates and may drop all") {
  const PrefixSums ps(WeightedSeries::unweighted({1.0, 5.0, 9.0}));
  std::vector<double> next_err(5, 0.0);
  std::vector<double> bound{0.0, -100.0, -100.0, -100.0};
  const auto& k = kernels::kernel_set(kernels::Isa::scalar);
  const auto none = k.bounded_row_scan(ps.cum_w(), ps.cum_wy(), ps.cum_wy2(),
                                       next_err.data(), bound.data(), 1, 1, 3);
  CHECK(none.arg == -1);
  bound[2] = 3.0;  // mean(1,2) = 3 <= 3 feasible
  const auto some = k.bounded_row_scan(ps.cum_w(), ps.cum_wy(), ps.cum_wy2(),
                                       next_err.data(), bound.data(), 1, 1, 3);
  CHECK(some.arg == 2);
}

TEST_CASE("avx2 kernels match the scalar reference bit for bit") {
  if (!kernels::available(kernels::Isa::avx2)) return;
  const auto& scalar = kernels::kernel_set(kernels::Isa::scalar);
  const auto& avx2 = kernels::kernel_set(kernels::Isa::avx2);
  std::mt19937_64 gen(777);
  for (int rep = 0; rep < 400; ++rep) {
    const std::int64_t n = 1 + static_cast<std::int64_t>(gen() % 200);
    const Fixture f = make_fixture(gen, n);
    const std::int64_t i = 1 + static_cast<std::int64_t>(gen() % n);
    const std::int64_t lo = i + static_cast<std::int64_t>(gen() % (n - i + 1));
    const std::int64_t hi =
        lo + static_cast<std::int64_t>(gen() % (n - lo + 1));

    const auto rs = scalar.row_scan(f.ps.cum_w(), f.ps.cum_wy(),
                                    f.ps.cum_wy2(), f.next_err.data(), i, lo,
                                    hi);
    const auto rv = avx2.row_scan(f.ps.cum_w(), f.ps.cum_wy(), f.ps.cum_wy2(),
                                  f.next_err.data(), i, lo, hi);
    CHECK(rs.arg == rv.arg);
    CHECK(bits_equal(rs.value, rv.value));

    if (hi <= n - 1) {
      const auto bs = scalar.bounded_row_scan(
          f.ps.cum_w(), f.ps.cum_wy(), f.ps.cum_wy2(), f.next_err.data(),
          f.bound.data(), i, lo, hi);
      const auto bv = avx2.bounded_row_scan(
          f.ps.cum_w(), f.ps.cum_wy(), f.ps.cum_wy2(), f.next_err.data(),
          f.bound.data(), i, lo, hi);
      CHECK(bs.arg == bv.arg);
      if (bs.arg >= 0) CHECK(bits_equal(bs.value, bv.value));
    }
  }
}

TEST_CASE("short windows hit the scalar tail path and stay exact") {
  if (!kernels::available(kernels::Isa::avx2)) return;
  const auto& scalar = kernels::kernel_set(kernels::Isa::scalar);
  const auto& avx2 = kernels::kernel_set(kernels::Isa::avx2);
  std::mt19937_64 gen(888);
  const Fixture f = make_fixture(gen, 64);
  for (std::int64_t len = 1; len <= 20; ++len) {
    for (std::int64_t lo = 1; lo + len - 1 <= 64; lo += 7) {
      const std::int64_t hi = lo + len - 1;
      const auto rs = scalar.row_scan(f.ps.cum_w(), f.ps.cum_wy(),
                                      f.ps.cum_wy2(), f.next_err.data(), 1, lo,
                                      hi);
      const auto rv = avx2.row_scan(f.ps.cum_w(), f.ps.cum_wy(),
                                    f.ps.cum_wy2(), f.next_err.data(), 1, lo,
                                    hi);
      CHECK(rs.arg == rv.arg);
      CHECK(bits_equal(rs.value, rv.value));
    }
  }
}
