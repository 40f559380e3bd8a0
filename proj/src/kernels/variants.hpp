#pragma once
// Declarations of the per-ISA kernel implementations. Internal to src/.

#include "stepfit/kernels.hpp"

#if defined(__x86_64__) || defined(__amd64__)
#define STEPFIT_X86_64 1
#else
#define STEPFIT_X86_64 0
#endif

namespace stepfit::kernels {

RowMin row_scan_scalar(const double* cum_w, const double* cum_wy,
                       const double* cum_wy2, const double* next_err,
                       std::int64_t i, std::int64_t lo, std::int64_t hi);
RowMin bounded_row_scan_scalar(const double* cum_w, const double* cum_wy,
                               const double* cum_wy2, const double* next_err,
                               const double* bound, std::int64_t i,
                               std::int64_t lo, std::int64_t hi);

#if STEPFIT_X86_64
RowMin row_scan_avx2(const double* cum_w, const double* cum_wy,
                     const double* cum_wy2, const double* next_err,
                     std::int64_t i, std::int64_t lo, std::int64_t hi);
RowMin bounded_row_scan_avx2(const double* cum_w, const double* cum_wy,
                             const double* cum_wy2, const double* next_err,
                             const double* bound, std::int64_t i,
                             std::int64_t lo, std::int64_t hi);
#endif

}  // namespace stepfit::kernels
