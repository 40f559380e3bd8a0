// AVX2 kernels: 4 candidates per iteration, scalar tail. Each lane performs
// the exact operation sequence of the scalar reference; min is exact, and the
// final reduction picks the smallest j among the lanes holding the minimum,
// so the result is bit-identical to the scalar kernel. _mm256_max_pd(e, 0)
// returns its second operand on NaN, matching the scalar (e > 0 ? e : 0)
// clamp for zero-weight intervals.

#include "variants.hpp"

#if STEPFIT_X86_64
#ifdef __AVX2__

#include <immintrin.h>

#include <limits>

namespace stepfit::kernels {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct LaneState {
  __m256d best;
  __m256i arg;
};

inline RowMin reduce_lanes(const LaneState& s, double best, std::int64_t arg) {
  alignas(32) double lane_v[4];
  alignas(32) std::int64_t lane_j[4];
  _mm256_store_pd(lane_v, s.best);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lane_j), s.arg);
  for (int k = 0; k < 4; ++k) {
    if (lane_j[k] < 0) continue;
    if (lane_v[k] < best || (lane_v[k] == best && lane_j[k] < arg)) {
      best = lane_v[k];
      arg = lane_j[k];
    }
  }
  return {best, arg};
}

}  // namespace

RowMin row_scan_avx2(const double* cum_w, const double* cum_wy,
                     const double* cum_wy2, const double* next_err,
                     std::int64_t i, std::int64_t lo, std::int64_t hi) {
  if (hi - lo + 1 < 8) {
    return row_scan_scalar(cum_w, cum_wy, cum_wy2, next_err, i, lo, hi);
  }
  const __m256d vbw = _mm256_set1_pd(cum_w[i - 1]);
  const __m256d vbwy = _mm256_set1_pd(cum_wy[i - 1]);
  const __m256d vbwy2 = _mm256_set1_pd(cum_wy2[i - 1]);
  const __m256d vzero = _mm256_setzero_pd();
  LaneState s{_mm256_set1_pd(kInf), _mm256_set1_epi64x(-1)};
  __m256i vj = _mm256_setr_epi64x(lo, lo + 1, lo + 2, lo + 3);
  const __m256i vfour = _mm256_set1_epi64x(4);

  std::int64_t j = lo;
  for (; j + 3 <= hi; j += 4) {
    const __m256d wd = _mm256_sub_pd(_mm256_loadu_pd(cum_w + j), vbw);
    const __m256d wyd = _mm256_sub_pd(_mm256_loadu_pd(cum_wy + j), vbwy);
    const __m256d wy2d = _mm256_sub_pd(_mm256_loadu_pd(cum_wy2 + j), vbwy2);
    __m256d e = _mm256_sub_pd(wy2d, _mm256_div_pd(_mm256_mul_pd(wyd, wyd), wd));
    e = _mm256_max_pd(e, vzero);
    const __m256d cost = _mm256_add_pd(e, _mm256_loadu_pd(next_err + j + 1));
    const __m256d lt = _mm256_cmp_pd(cost, s.best, _CMP_LT_OQ);
    s.best = _mm256_blendv_pd(s.best, cost, lt);
    s.arg = _mm256_blendv_epi8(s.arg, vj, _mm256_castpd_si256(lt));
    vj = _mm256_add_epi64(vj, vfour);
  }

  auto [best, arg] = reduce_lanes(s, kInf, -1);
  // tail candidates all have larger j, so strict < keeps the tie rule intact
  const double bw = cum_w[i - 1];
  const double bwy = cum_wy[i - 1];
  const double bwy2 = cum_wy2[i - 1];
  for (; j <= hi; ++j) {
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

RowMin bounded_row_scan_avx2(const double* cum_w, const double* cum_wy,
                             const double* cum_wy2, const double* next_err,
                             const double* bound, std::int64_t i,
                             std::int64_t lo, std::int64_t hi) {
  if (hi - lo + 1 < 8) {
    return bounded_row_scan_scalar(cum_w, cum_wy, cum_wy2, next_err, bound, i,
                                   lo, hi);
  }
  const __m256d vbw = _mm256_set1_pd(cum_w[i - 1]);
  const __m256d vbwy = _mm256_set1_pd(cum_wy[i - 1]);
  const __m256d vbwy2 = _mm256_set1_pd(cum_wy2[i - 1]);
  const __m256d vzero = _mm256_setzero_pd();
  const __m256d vinf = _mm256_set1_pd(kInf);
  LaneState s{vinf, _mm256_set1_epi64x(-1)};
  __m256i vj = _mm256_setr_epi64x(lo, lo + 1, lo + 2, lo + 3);
  const __m256i vfour = _mm256_set1_epi64x(4);

  std::int64_t j = lo;
  for (; j + 3 <= hi; j += 4) {
    const __m256d wd = _mm256_sub_pd(_mm256_loadu_pd(cum_w + j), vbw);
    const __m256d wyd = _mm256_sub_pd(_mm256_loadu_pd(cum_wy + j), vbwy);
    // mean is NaN for zero-weight lanes; the explicit wd == 0 test keeps them
    const __m256d mean = _mm256_div_pd(wyd, wd);
    const __m256d feas =
        _mm256_or_pd(_mm256_cmp_pd(mean, _mm256_loadu_pd(bound + j), _CMP_LE_OQ),
                     _mm256_cmp_pd(wd, vzero, _CMP_EQ_OQ));
    const __m256d wy2d = _mm256_sub_pd(_mm256_loadu_pd(cum_wy2 + j), vbwy2);
    __m256d e = _mm256_sub_pd(wy2d, _mm256_div_pd(_mm256_mul_pd(wyd, wyd), wd));
    e = _mm256_max_pd(e, vzero);
    __m256d cost = _mm256_add_pd(e, _mm256_loadu_pd(next_err + j + 1));
    cost = _mm256_blendv_pd(vinf, cost, feas);
    const __m256d lt = _mm256_cmp_pd(cost, s.best, _CMP_LT_OQ);
    s.best = _mm256_blendv_pd(s.best, cost, lt);
    s.arg = _mm256_blendv_epi8(s.arg, vj, _mm256_castpd_si256(lt));
    vj = _mm256_add_epi64(vj, vfour);
  }

  auto [best, arg] = reduce_lanes(s, kInf, -1);
  const double bw = cum_w[i - 1];
  const double bwy = cum_wy[i - 1];
  const double bwy2 = cum_wy2[i - 1];
  for (; j <= hi; ++j) {
    const double wd = cum_w[j] - bw;
    const double wyd = cum_wy[j] - bwy;
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

#endif  // __AVX2__
#endif  // STEPFIT_X86_64
