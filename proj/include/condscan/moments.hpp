#pragma once

#include "condscan/interval.hpp"
#include "condscan/kernels.hpp"
#include "condscan/sample.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace condscan {

/// Variance below this fraction of the mean square counts as degenerate;
/// the correlation then follows the off-diagonal Kronecker-delta
/// convention and is reported as 0.
inline constexpr double kVarRelTol = 1e-12;

/// Sufficient statistics of a conditioned subsample.
struct CondMoments {
    std::int64_t m = 0;
    double sx = 0.0;
    double sy = 0.0;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;

    double mean_x() const { return sx / static_cast<double>(m); }
    double mean_y() const { return sy / static_cast<double>(m); }

    /// Population variance of x on the subsample, clamped at 0 when the
    /// raw value is a small negative rounding residue. A negative value
    /// beyond the tolerance indicates a broken accumulation and throws.
    double var_x() const;
    double var_y() const;

    /// True when the x (resp. y) column is constant on the subsample up
    /// to the relative tolerance.
    bool degenerate_x() const;
    bool degenerate_y() const;
};

CondMoments from_sums(const MomentSums& s);

/// Indices (ascending) of the sample points inside the rectangle.
std::vector<std::size_t> select_indices(const PairedSample& sample, const Rectangle& rect);

/// Exact conditional sufficient statistics over the rectangle; rect must
/// be two-dimensional.
CondMoments conditional_moments(const PairedSample& sample, const Rectangle& rect);

/// sxy/m - (sx/m)(sy/m); empty when m < 2.
std::optional<double> conditional_covariance(const CondMoments& mom);

/// Pearson correlation of the subsample, in [-1, 1]. Returns 0 when
/// m < 2 or either conditional standard deviation is degenerate.
double conditional_correlation(const CondMoments& mom);

/// Mean of the values inside the interval; empty when none are.
std::optional<double> truncated_mean(std::span<const double> values, const Interval& interval);

} // namespace condscan
