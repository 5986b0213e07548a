#pragma once

// Error-free transforms and a two-double accumulator. Prefix-sum tables
// store these so that rectangle readouts survive the cancellation in
// inclusion-exclusion at any scale the data can reach.

#include <cmath>

namespace condscan {

/// Two-double value: hi holds the rounded sum, lo the residual.
struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

/// Knuth two-sum: exact a + b as hi + lo.
inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    DD r;
    r.hi = s;
    r.lo = (a - (s - bb)) + (b - bb);
    return r;
}

inline DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    double lo = a.lo + s.lo;
    return two_sum(s.hi, lo);
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = a.lo + (b.lo + s.lo);
    return two_sum(s.hi, lo);
}

inline DD dd_neg(DD a) { return DD{-a.hi, -a.lo}; }

inline DD dd_sub(DD a, DD b) { return dd_add(a, dd_neg(b)); }

inline double dd_value(DD a) { return a.hi + a.lo; }

/// Neumaier running sum (single-double state plus compensation).
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double t = sum + v;
        if (std::fabs(sum) >= std::fabs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }

    double value() const { return sum + comp; }
};

} // namespace condscan
