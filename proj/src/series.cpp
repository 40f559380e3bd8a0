#include "stepfit/series.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace stepfit {

WeightedSeries::WeightedSeries(std::vector<double> values,
                               std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  if (values_.empty()) {
    throw std::invalid_argument("series: need at least one point");
  }
  if (values_.size() != weights_.size()) {
    throw std::invalid_argument("series: values/weights length mismatch");
  }
  bool any_positive = false;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!std::isfinite(values_[k]) || !std::isfinite(weights_[k])) {
      throw std::invalid_argument("series: entries must be finite (index " +
                                  std::to_string(k + 1) + ")");
    }
    if (weights_[k] < 0.0) {
      throw std::invalid_argument("series: negative weight (index " +
                                  std::to_string(k + 1) + ")");
    }
    any_positive = any_positive || weights_[k] > 0.0;
  }
  if (!any_positive) {
    throw std::invalid_argument("series: all weights are zero");
  }
}

WeightedSeries WeightedSeries::unweighted(std::vector<double> values) {
  std::vector<double> ones(values.size(), 1.0);
  return WeightedSeries(std::move(values), std::move(ones));
}

bool WeightedSeries::is_isotonic() const {
  for (std::size_t k = 1; k < values_.size(); ++k) {
    if (values_[k] < values_[k - 1]) return false;
  }
  return true;
}

PrefixSums::PrefixSums(const WeightedSeries& series) : n_(series.size()) {
  const auto len = static_cast<std::size_t>(n_) + 1;
  cum_w_.resize(len);
  cum_wy_.resize(len);
  cum_wy2_.resize(len);
  cum_w_[0] = cum_wy_[0] = cum_wy2_[0] = 0.0;
  long double w = 0.0L;
  long double wy = 0.0L;
  long double wy2 = 0.0L;
  for (std::int64_t i = 1; i <= n_; ++i) {
    const long double wi = series.weight(i);
    const long double yi = series.value(i);
    w += wi;
    wy += wi * yi;
    wy2 += wi * yi * yi;
    const auto k = static_cast<std::size_t>(i);
    cum_w_[k] = static_cast<double>(w);
    cum_wy_[k] = static_cast<double>(wy);
    cum_wy2_[k] = static_cast<double>(wy2);
  }
}

void PrefixSums::check(Interval iv) const {
  if (iv.lo < 1 || iv.lo > iv.hi || iv.hi > n_) {
    throw std::invalid_argument("interval out of range");
  }
}

double PrefixSums::weight(Interval iv) const {
  check(iv);
  return cum_w_[static_cast<std::size_t>(iv.hi)] -
         cum_w_[static_cast<std::size_t>(iv.lo - 1)];
}

double PrefixSums::mean(Interval iv) const {
  check(iv);
  const double wd = cum_w_[static_cast<std::size_t>(iv.hi)] -
                    cum_w_[static_cast<std::size_t>(iv.lo - 1)];
  if (!(wd > 0.0)) {
    throw std::invalid_argument("mean of a zero-weight interval");
  }
  return (cum_wy_[static_cast<std::size_t>(iv.hi)] -
          cum_wy_[static_cast<std::size_t>(iv.lo - 1)]) /
         wd;
}

double PrefixSums::sse(Interval iv) const {
  check(iv);
  return interval_sse_raw(cum_w_.data(), cum_wy_.data(), cum_wy2_.data(),
                          iv.lo, iv.hi);
}

}  // namespace stepfit
