#pragma once

#include "condscan/dd.hpp"
#include "condscan/moments.hpp"
#include "condscan/sample.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace condscan {

/// Type-7 quantile (linear interpolation between order statistics) of a
/// sorted, non-empty vector; p in [0, 1].
double quantile_type7(std::span<const double> sorted, double p);

/// Data-driven bin layout per axis. Interior cut points sit strictly
/// inside (min, max]; bin i covers [edge(i), edge(i+1)) and the last bin
/// is closed at the maximum. A raw quantile cut that falls at or below
/// the minimum separates nothing and is snapped up to the smallest data
/// value above the minimum, so every retained cut splits the data.
struct QuantileGrid {
    std::vector<double> x_cuts;
    std::vector<double> y_cuts;
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;

    int gx() const { return static_cast<int>(x_cuts.size()) + 1; }
    int gy() const { return static_cast<int>(y_cuts.size()) + 1; }

    // Edges: index 0 is the data minimum, gx() the maximum.
    double x_edge(int i) const;
    double y_edge(int j) const;

    int x_bin(double v) const;
    int y_bin(double v) const;
};

QuantileGrid build_grid(const PairedSample& sample, int levels);

/// Cut points for one column (the per-axis half of build_grid).
std::vector<double> build_axis_cuts(std::span<const double> column, int levels);

/// Prefix sums of the per-bin sufficient statistics. Counts are exact
/// integers; value planes are kept in two-double form so rectangle
/// readouts agree with direct summation far below the contract
/// tolerance.
class SummedAreaTable {
public:
    SummedAreaTable(int gx, int gy);

    int gx() const { return gx_; }
    int gy() const { return gy_; }

    /// Moments of the bin union [i0, i1) x [j0, j1); 0 <= i0 < i1 <= gx.
    CondMoments rect(int i0, int i1, int j0, int j1) const;

    /// Count readout only.
    std::int64_t rect_count(int i0, int i1, int j0, int j1) const;

    /// Occupancy of a single cell.
    std::int64_t cell_count(int i, int j) const;

    void accumulate(int i, int j, double xv, double yv);
    void finalize(); // builds the prefix sums; call once after accumulation

private:
    std::size_t at(int i, int j) const {
        return static_cast<std::size_t>(i) * (gy_ + 1) + j;
    }

    int gx_;
    int gy_;
    bool finalized_ = false;
    std::vector<std::int64_t> count_;
    std::vector<DD> sx_, sy_, sxy_, sxx_, syy_;
};

SummedAreaTable build_sat(const PairedSample& sample, const QuantileGrid& grid);

/// SAT from precomputed bin indices (permutation replicates re-pair the
/// y side without re-binning).
SummedAreaTable build_sat_binned(std::span<const int> xbin, std::span<const int> ybin,
                                 std::span<const double> x, std::span<const double> y,
                                 int gx, int gy);

/// Empty cells whose marginal bins are both occupied; a nonzero
/// fraction warns that product-support assumptions behind local-scan
/// conclusions may not hold.
struct SupportReport {
    int gx = 0;
    int gy = 0;
    std::size_t flagged = 0;
    double fraction = 0.0; // flagged / (gx * gy)
    std::vector<std::pair<int, int>> cells;
};

SupportReport support_product_check(const PairedSample& sample, const QuantileGrid& grid);

} // namespace condscan
