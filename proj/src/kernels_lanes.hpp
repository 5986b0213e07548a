#pragma once

// Shared lane-accumulator machinery for the moment kernels. Element i
// always lands in lane i % 4, so every variant that follows this scheme
// produces the same floating-point result. Compiled with fp-contract
// off; a fused multiply-add here would change the reference bits.

#include "condscan/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace condscan::detail {

struct NeumaierLanes {
    double sum[4] = {0.0, 0.0, 0.0, 0.0};
    double comp[4] = {0.0, 0.0, 0.0, 0.0};

    void add(int lane, double v) {
        const double s = sum[lane];
        const double t = s + v;
        if (std::fabs(s) >= std::fabs(v)) {
            comp[lane] += (s - t) + v;
        } else {
            comp[lane] += (v - t) + s;
        }
        sum[lane] = t;
    }

    /// Lane merge in fixed order 0..3: two-sum chain over the sums, then
    /// the compensations in the same order.
    double total() const {
        double s = 0.0;
        double c = 0.0;
        for (int lane = 0; lane < 4; ++lane) {
            const double v = sum[lane];
            const double t = s + v;
            if (std::fabs(s) >= std::fabs(v)) {
                c += (s - t) + v;
            } else {
                c += (v - t) + s;
            }
            s = t;
            c += comp[lane];
        }
        return s + c;
    }
};

struct MomentLanes {
    NeumaierLanes sx, sy, sxy, sxx, syy;
    std::int64_t m = 0;

    void add_point(int lane, double xv, double yv,
                   double xlo, double xhi, double ylo, double yhi) {
        const bool in = xv >= xlo && xv <= xhi && yv >= ylo && yv <= yhi;
        const double mx = in ? xv : 0.0;
        const double my = in ? yv : 0.0;
        const double mxy = in ? xv * yv : 0.0;
        const double mxx = in ? xv * xv : 0.0;
        const double myy = in ? yv * yv : 0.0;
        m += in ? 1 : 0;
        sx.add(lane, mx);
        sy.add(lane, my);
        sxy.add(lane, mxy);
        sxx.add(lane, mxx);
        syy.add(lane, myy);
    }

    MomentSums finish() const {
        MomentSums out;
        out.m = m;
        out.sx = sx.total();
        out.sy = sy.total();
        out.sxy = sxy.total();
        out.sxx = sxx.total();
        out.syy = syy.total();
        return out;
    }
};

} // namespace condscan::detail
