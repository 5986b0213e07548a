#include "condscan/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace condscan {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

namespace {

struct Selected {
    MomentKernelFn fn;
    const char* name;
};

Selected select() {
    const char* env = std::getenv("CONDSCAN_KERNEL");
    const bool want_scalar = env && std::strcmp(env, "scalar") == 0;
    const bool want_avx2 = env && std::strcmp(env, "avx2") == 0;
#if defined(__x86_64__) || defined(_M_X64)
    if (!want_scalar && avx2_available()) {
        return {&masked_moments_avx2, "avx2"};
    }
#endif
    (void)want_avx2; // unavailable requests fall back to scalar
    return {&masked_moments_scalar, "scalar"};
}

const Selected& cached() {
    static const Selected s = select();
    return s;
}

} // namespace

MomentKernelFn moment_kernel() { return cached().fn; }

const char* moment_kernel_name() { return cached().name; }

} // namespace condscan
