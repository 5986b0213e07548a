// Microbenchmark for the moment kernels and the scan engine. Reports
// effective throughput of the masked-moment inner loop per kernel
// variant, plus end-to-end scan timings.

#include "condscan/generators.hpp"
#include "condscan/grid.hpp"
#include "condscan/inference.hpp"
#include "condscan/kernels.hpp"
#include "condscan/scan.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

using namespace condscan;

namespace {

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

double bench_kernel(MomentKernelFn kernel, const PairedSample& s, int reps) {
    // rotate rectangle bounds so the branch predictor cannot learn a
    // fixed mask
    const double bounds[4][4] = {
        {-0.7, 0.9, -0.5, 1.2},
        {0.0, 2.0, 0.0, 2.0},
        {-2.0, 0.1, -1.0, 0.4},
        {-3.0, 3.0, -3.0, 3.0},
    };
    volatile double sink = 0.0;
    const double t0 = now_seconds();
    for (int r = 0; r < reps; ++r) {
        const double* b = bounds[r % 4];
        const MomentSums m =
            kernel(s.x.data(), s.y.data(), s.size(), b[0], b[1], b[2], b[3]);
        sink = sink + m.sxy;
    }
    const double dt = now_seconds() - t0;
    (void)sink;
    // two input doubles per point
    const double bytes = 16.0 * static_cast<double>(s.size()) * reps;
    return bytes / dt / 1e9;
}

} // namespace

int main(int argc, char** argv) {
    std::size_t n = 1000000;
    int reps = 50;
    if (argc > 1) n = static_cast<std::size_t>(std::atoll(argv[1]));
    if (argc > 2) reps = std::atoi(argv[2]);

    const PairedSample s = gen_indep_gauss(n, 1);
    std::printf("n = %zu, reps = %d\n", n, reps);

    const double scalar_gbs = bench_kernel(&masked_moments_scalar, s, reps);
    std::printf("%-28s %7.2f GB/s\n", "masked moments, scalar", scalar_gbs);
#if defined(__x86_64__) || defined(_M_X64)
    if (avx2_available()) {
        const double avx2_gbs = bench_kernel(&masked_moments_avx2, s, reps);
        std::printf("%-28s %7.2f GB/s  (%.2fx)\n", "masked moments, avx2", avx2_gbs,
                    avx2_gbs / scalar_gbs);
    }
#endif
    std::printf("%-28s %s\n", "dispatched kernel", moment_kernel_name());

    {
        const double t0 = now_seconds();
        const QuantileGrid grid = build_grid(s, 12);
        const SummedAreaTable sat = build_sat(s, grid);
        const double t_build = now_seconds() - t0;
        const double t1 = now_seconds();
        const ScanReport rep = scan_prepared(sat, grid,
                                             ConditioningFamily::Kind::bounded_grid, 30, false);
        const double t_scan = now_seconds() - t1;
        std::printf("%-28s %7.1f ms\n", "grid + SAT build (L=12)", t_build * 1e3);
        std::printf("%-28s %7.1f ms  (%zu rects)\n", "bounded scan readout",
                    t_scan * 1e3, rep.total_rects);
    }
    {
        const double t0 = now_seconds();
        const ScanReport rep = scan_local(s, 0.5, 0.25, 30);
        std::printf("%-28s %7.1f ms  (%zu windows)\n", "local scan (eps=0.5)",
                    (now_seconds() - t0) * 1e3, rep.total_rects);
    }
    {
        ScanConfig cfg;
        cfg.mode = ScanConfig::Mode::bounded;
        cfg.levels = 8;
        cfg.m_min = 30;
        const double t0 = now_seconds();
        permutation_test(s, cfg, 99, 1);
        std::printf("%-28s %7.1f ms\n", "permutation test (B=99)",
                    (now_seconds() - t0) * 1e3);
    }
    return 0;
}
