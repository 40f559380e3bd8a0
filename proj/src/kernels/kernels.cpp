// Runtime ISA selection for the row-scan kernels.

#include "stepfit/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "variants.hpp"

namespace stepfit::kernels {

namespace {

const KernelSet kScalarSet{"scalar", &row_scan_scalar,
                           &bounded_row_scan_scalar};
#if STEPFIT_X86_64
const KernelSet kAvx2Set{"avx2", &row_scan_avx2, &bounded_row_scan_avx2};
#endif

bool cpu_has_avx2() {
#if STEPFIT_X86_64
  return __builtin_cpu_supports("avx2") != 0;
#else
  return false;
#endif
}

Isa default_isa() {
  if (const char* env = std::getenv("STEPFIT_KERNEL")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && cpu_has_avx2()) return Isa::avx2;
    // anything else falls through to auto-detection
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& active_slot() {
  static std::atomic<Isa> slot{default_isa()};
  return slot;
}

}  // namespace

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
      return cpu_has_avx2();
  }
  return false;
}

const char* isa_name(Isa isa) {
  return isa == Isa::scalar ? "scalar" : "avx2";
}

Isa active() { return active_slot().load(std::memory_order_relaxed); }

void select(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument(std::string("kernel ISA not available: ") +
                                isa_name(isa));
  }
  active_slot().store(isa, std::memory_order_relaxed);
}

const KernelSet& kernel_set(Isa isa) {
  if (!available(isa)) {
    throw std::invalid_argument(std::string("kernel ISA not available: ") +
                                isa_name(isa));
  }
#if STEPFIT_X86_64
  if (isa == Isa::avx2) return kAvx2Set;
#endif
  return kScalarSet;
}

const KernelSet& active_set() { return kernel_set(active()); }

}  // namespace stepfit::kernels
