// Scalar reference kernels. The SIMD variants must match these bit for bit,
// so the per-candidate arithmetic here is the canonical operation order:
//   wd, wyd, wy2d  : prefix differences
//   e              : wy2d - (wyd * wyd) / wd, clamped through (e > 0 ? e : 0)
//   cost           : e + next_err[j + 1]
// The clamp also maps the 0/0 NaN of a zero-weight interval to 0.

#include <limits>

#include "variants.hpp"

namespace stepfit::kernels {

RowMin row_scan_scalar(const double* cum_w, const double* cum_wy,
                       const double* cum_wy2, const double* next_err,
                       std::int64_t i, std::int64_t lo, std::int64_t hi) {
  const double bw = cum_w[i - 1];
  const double bwy = cum_wy[i - 1];
  const double bwy2 = cum_wy2[i - 1];
  double best = std::numeric_limits<double>::infinity();
  std::int64_t arg = -1;
  for (std::int64_t j = lo; j <= hi; ++j) {
    const double wd = cum_w[j] - bw;
    const double wyd = cum_wy[j] - bwy;
    const double wy2d = cum_wy2[j] - bwy2;
    double e = wy2d - (wyd * wyd) / wd;
    e = e > 0.0 ? e : 0.0;
    const double cost = e + next_err[j + 1];
    if (cost < best) {
      best = cost;
      arg = j;
    }
  }
  return {best, arg};
}

RowMin bounded_row_scan_scalar(const double* cum_w, const double* cum_wy,
                               const double* cum_wy2, const double* next_err,
                               const double* bound, std::int64_t i,
                               std::int64_t lo, std::int64_t hi) {
  const double bw = cum_w[i - 1];
  const double bwy = cum_wy[i - 1];
  const double bwy2 = cum_wy2[i - 1];
  double best = std::numeric_limits<double>::infinity();
  std::int64_t arg = -1;
  for (std::int64_t j = lo; j <= hi; ++j) {
    const double wd = cum_w[j] - bw;
    const double wyd = cum_wy[j] - bwy;
    // zero-weight steps can take any level, so they are always feasible
    if (!(wd == 0.0 || wyd / wd <= bound[j])) continue;
    const double wy2d = cum_wy2[j] - bwy2;
    double e = wy2d - (wyd * wyd) / wd;
    e = e > 0.0 ? e : 0.0;
    const double cost = e + next_err[j + 1];
    if (cost < best) {
      best = cost;
      arg = j;
    }
  }
  return {best, arg};
}

}  // namespace stepfit::kernels
