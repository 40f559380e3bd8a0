#pragma once
// Weighted 1-D data and O(1) interval statistics over prefix sums.

#include <cstdint>
#include <vector>

namespace stepfit {

// 1-based inclusive index range.
struct Interval {
  std::int64_t lo = 1;
  std::int64_t hi = 1;

  std::int64_t length() const { return hi - lo + 1; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Values y_1..y_n with nonnegative weights w_1..w_n, addressed 1-based.
// Construction enforces n >= 1, matching lengths, finite entries, w_i >= 0
// and at least one positive weight.
class WeightedSeries {
 public:
  WeightedSeries(std::vector<double> values, std::vector<double> weights);
  static WeightedSeries unweighted(std::vector<double> values);

  std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
  double value(std::int64_t i) const { return values_[static_cast<std::size_t>(i - 1)]; }
  double weight(std::int64_t i) const { return weights_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& weights() const { return weights_; }

  // True when the values are nondecreasing. Weights play no part.
  bool is_isotonic() const;

 private:
  std::vector<double> values_;
  std::vector<double> weights_;
};

// Squared-error of the step [lo, hi] evaluated directly on raw prefix-sum
// arrays. Shared by PrefixSums::sse and the scan kernels so that every code
// path compares bit-identical values. A zero-weight interval yields 0/0 = NaN
// inside, which the final clamp maps to 0.
inline double interval_sse_raw(const double* cum_w, const double* cum_wy,
                               const double* cum_wy2, std::int64_t lo,
                               std::int64_t hi) {
  const double wd = cum_w[hi] - cum_w[lo - 1];
  const double wyd = cum_wy[hi] - cum_wy[lo - 1];
  const double wy2d = cum_wy2[hi] - cum_wy2[lo - 1];
  const double e = wy2d - (wyd * wyd) / wd;
  return e > 0.0 ? e : 0.0;
}

// Running sums of w, w*y and w*y^2 with a leading zero entry. Accumulated in
// long double, stored as double; mean/sse of any interval cost O(1).
class PrefixSums {
 public:
  explicit PrefixSums(const WeightedSeries& series);

  std::int64_t size() const { return n_; }

  double weight(Interval iv) const;
  // Weighted mean on iv. Throws std::invalid_argument when iv carries no
  // weight; callers that can hit that case must handle it themselves.
  double mean(Interval iv) const;
  // Weighted sum of squared deviations from the interval mean, clamped to
  // >= 0. Zero-weight intervals cost nothing.
  double sse(Interval iv) const;

  // Raw arrays, index 0..n, entry 0 == 0. The DP kernels index these directly.
  const double* cum_w() const { return cum_w_.data(); }
  const double* cum_wy() const { return cum_wy_.data(); }
  const double* cum_wy2() const { return cum_wy2_.data(); }

 private:
  void check(Interval iv) const;

  std::int64_t n_ = 0;
  std::vector<double> cum_w_;
  std::vector<double> cum_wy_;
  std::vector<double> cum_wy2_;
};

}  // namespace stepfit
