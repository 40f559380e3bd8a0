#pragma once
// Inner-loop kernels for the dynamic programs: a scalar reference and an AVX2
// variant selected at runtime. All variants evaluate each candidate with the
// same operation order and reduce with an exact min, so their results are
// bit-identical; the equivalence tests assert exactly that.

#include <cstdint>

namespace stepfit::kernels {

struct RowMin {
  double value;      // minimum cost over the window; +inf when all dropped
  std::int64_t arg;  // smallest minimizing j; -1 when all dropped
};

// cost(j) = sse(i, j) + next_err[j + 1] minimized over j in [lo, hi],
// with i <= lo <= hi. Ties keep the smallest j.
using RowScanFn = RowMin (*)(const double* cum_w, const double* cum_wy,
                             const double* cum_wy2, const double* next_err,
                             std::int64_t i, std::int64_t lo, std::int64_t hi);

// As above, but candidate j survives only when mean(i, j) <= bound[j] or the
// interval [i, j] carries no weight.
using BoundedRowScanFn = RowMin (*)(const double* cum_w, const double* cum_wy,
                                    const double* cum_wy2,
                                    const double* next_err, const double* bound,
                                    std::int64_t i, std::int64_t lo,
                                    std::int64_t hi);

struct KernelSet {
  const char* name;
  RowScanFn row_scan;
  BoundedRowScanFn bounded_row_scan;
};

enum class Isa { scalar, avx2 };

bool available(Isa isa);
const char* isa_name(Isa isa);

// Current selection. Defaults to the widest available ISA; the STEPFIT_KERNEL
// environment variable ("scalar" or "avx2") overrides the default.
Isa active();
// Throws std::invalid_argument when the ISA is not available on this CPU.
void select(Isa isa);

const KernelSet& kernel_set(Isa isa);
const KernelSet& active_set();

}  // namespace stepfit::kernels
