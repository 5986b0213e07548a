#include "kernels_lanes.hpp"

namespace condscan {

MomentSums masked_moments_scalar(const double* x, const double* y, std::size_t n,
                                 double xlo, double xhi, double ylo, double yhi) {
    detail::MomentLanes lanes;
    const std::size_t main = n - n % 4;
    for (std::size_t i = 0; i < main; i += 4) {
        for (int lane = 0; lane < 4; ++lane) {
            lanes.add_point(lane, x[i + lane], y[i + lane], xlo, xhi, ylo, yhi);
        }
    }
    for (std::size_t i = main; i < n; ++i) {
        lanes.add_point(static_cast<int>(i - main), x[i], y[i], xlo, xhi, ylo, yhi);
    }
    return lanes.finish();
}

} // namespace condscan
