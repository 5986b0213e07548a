#pragma once

// Masked moment kernels: the arithmetic inner loop of every scan. Given
// paired columns and closed rectangle bounds, accumulate the sufficient
// statistics over the points inside. A scalar reference implementation
// defines the exact operation order (four interleaved Neumaier lanes
// merged in lane order); the AVX2 variant performs the same operations
// on vector lanes and is required to match it bit for bit. Selection
// happens once at runtime, overridable via CONDSCAN_KERNEL.

#include <cstddef>
#include <cstdint>

namespace condscan {

struct MomentSums {
    std::int64_t m = 0;
    double sx = 0.0;
    double sy = 0.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
};

/// Accumulates over { i : xlo <= x[i] <= xhi and ylo <= y[i] <= yhi }.
/// Unbounded sides are expressed as +-infinity; inputs must be finite.
using MomentKernelFn = MomentSums (*)(const double* x, const double* y, std::size_t n,
                                      double xlo, double xhi, double ylo, double yhi);

MomentSums masked_moments_scalar(const double* x, const double* y, std::size_t n,
                                 double xlo, double xhi, double ylo, double yhi);

#if defined(__x86_64__) || defined(_M_X64)
MomentSums masked_moments_avx2(const double* x, const double* y, std::size_t n,
                               double xlo, double xhi, double ylo, double yhi);
#endif

/// Best kernel for this machine (cached after first call). Honors
/// CONDSCAN_KERNEL=scalar|avx2|auto; an unavailable request falls back
/// to scalar.
MomentKernelFn moment_kernel();

/// Name of the kernel moment_kernel() returns ("scalar", "avx2").
const char* moment_kernel_name();

/// True when the AVX2 variant is compiled in and the CPU supports it.
bool avx2_available();

} // namespace condscan
