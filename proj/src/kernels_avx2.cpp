#include "kernels_lanes.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace condscan {

namespace {

// Four Neumaier lanes held in one vector register; replays the exact
// operation sequence of detail::NeumaierLanes::add across lanes.
struct VecNeumaier {
    __m256d sum = _mm256_setzero_pd();
    __m256d comp = _mm256_setzero_pd();

    void add(__m256d v) {
        const __m256d t = _mm256_add_pd(sum, v);
        const __m256d abs_mask =
            _mm256_castsi256_pd(_mm256_set1_epi64x(0x7FFFFFFFFFFFFFFFll));
        const __m256d abs_s = _mm256_and_pd(sum, abs_mask);
        const __m256d abs_v = _mm256_and_pd(v, abs_mask);
        const __m256d ge = _mm256_cmp_pd(abs_s, abs_v, _CMP_GE_OQ);
        const __m256d big = _mm256_add_pd(_mm256_sub_pd(sum, t), v);
        const __m256d small = _mm256_add_pd(_mm256_sub_pd(v, t), sum);
        comp = _mm256_add_pd(comp, _mm256_blendv_pd(small, big, ge));
        sum = t;
    }

    void store(detail::NeumaierLanes& out) const {
        _mm256_storeu_pd(out.sum, sum);
        _mm256_storeu_pd(out.comp, comp);
    }
};

} // namespace

MomentSums masked_moments_avx2(const double* x, const double* y, std::size_t n,
                               double xlo, double xhi, double ylo, double yhi) {
    const __m256d vxlo = _mm256_set1_pd(xlo);
    const __m256d vxhi = _mm256_set1_pd(xhi);
    const __m256d vylo = _mm256_set1_pd(ylo);
    const __m256d vyhi = _mm256_set1_pd(yhi);

    VecNeumaier sx, sy, sxy, sxx, syy;
    std::int64_t m = 0;

    const std::size_t main = n - n % 4;
    for (std::size_t i = 0; i < main; i += 4) {
        const __m256d xv = _mm256_loadu_pd(x + i);
        const __m256d yv = _mm256_loadu_pd(y + i);
        const __m256d in_x = _mm256_and_pd(_mm256_cmp_pd(xv, vxlo, _CMP_GE_OQ),
                                           _mm256_cmp_pd(xv, vxhi, _CMP_LE_OQ));
        const __m256d in_y = _mm256_and_pd(_mm256_cmp_pd(yv, vylo, _CMP_GE_OQ),
                                           _mm256_cmp_pd(yv, vyhi, _CMP_LE_OQ));
        const __m256d mask = _mm256_and_pd(in_x, in_y);

        m += __builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(mask)));
        sx.add(_mm256_and_pd(mask, xv));
        sy.add(_mm256_and_pd(mask, yv));
        sxy.add(_mm256_and_pd(mask, _mm256_mul_pd(xv, yv)));
        sxx.add(_mm256_and_pd(mask, _mm256_mul_pd(xv, xv)));
        syy.add(_mm256_and_pd(mask, _mm256_mul_pd(yv, yv)));
    }

    detail::MomentLanes lanes;
    lanes.m = m;
    sx.store(lanes.sx);
    sy.store(lanes.sy);
    sxy.store(lanes.sxy);
    sxx.store(lanes.sxx);
    syy.store(lanes.syy);
    for (std::size_t i = main; i < n; ++i) {
        lanes.add_point(static_cast<int>(i - main), x[i], y[i], xlo, xhi, ylo, yhi);
    }
    return lanes.finish();
}

} // namespace condscan

#endif // x86_64
