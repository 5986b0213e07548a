#pragma once

#include "condscan/grid.hpp"
#include "condscan/interval.hpp"
#include "condscan/moments.hpp"
#include "condscan/sample.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace condscan {

/// Finite surrogates of the test-interval families the scan quantifies
/// over: all grid-aligned boxes, all upper-tail products, or all small
/// windows of diameter <= eps.
struct ConditioningFamily {
    enum class Kind { bounded_grid, upper_tails, local_windows };

    Kind kind = Kind::bounded_grid;
    int levels = 12;   // bounded_grid / upper_tails
    double eps = 0.0;  // local_windows

    static ConditioningFamily bounded_grid(int levels) {
        return {Kind::bounded_grid, levels, 0.0};
    }
    static ConditioningFamily upper_tails(int levels) {
        return {Kind::upper_tails, levels, 0.0};
    }
    static ConditioningFamily local_windows(double eps) {
        return {Kind::local_windows, 0, eps};
    }

    std::string describe() const;
};

/// One evaluated rectangle. `key` orders rectangles lexicographically
/// (per-axis low/high indices) for deterministic argmax tie-breaks.
struct RectRecord {
    Rectangle rect;
    std::array<int, 4> key{};
    std::int64_t m = 0;
    bool skipped = false; // m < m_min: excluded from the max statistic
    double cov = 0.0;
    double cor = 0.0;
    // For d > 2 scans: the variable pair attaining the extreme entry.
    int pair_i = 0;
    int pair_j = 1;
};

struct ScanReport {
    std::string family;
    std::int64_t m_min = 0;
    std::size_t total_rects = 0;
    std::size_t skipped = 0;
    double max_abs_cor = 0.0;
    bool has_argmax = false;
    RectRecord argmax{Rectangle::full(2)};
    // Conditional correlation matrix of the argmax event (row-major
    // d x d), computed from the same bin-union subsample as the record.
    std::size_t argmax_d = 0;
    std::vector<double> argmax_corr;
    std::vector<RectRecord> records;
    bool truncated = false; // enumeration budget hit (multivariate scans)
};

/// Scans the family over a quantile grid built from the sample. Grid
/// rectangles are bin unions: the x-interval [edge_i, edge_j] covers
/// bins i..j-1 (half-open at edge_j, closed at the global maximum).
/// m_min must be >= 2; a local_windows family delegates to scan_local
/// with stride = eps / 2.
ScanReport scan(const PairedSample& sample, const ConditioningFamily& family,
                int levels, std::int64_t m_min);

/// Same scan on a prebuilt grid/SAT (permutation replicates reuse both).
ScanReport scan_prepared(const SummedAreaTable& sat, const QuantileGrid& grid,
                         ConditioningFamily::Kind kind, std::int64_t m_min,
                         bool collect_records, std::size_t max_rects = 0);

/// Overlapping eps-windows offset by stride over the data bounding box;
/// windows are real rectangles with closed membership, not grid-aligned.
ScanReport scan_local(const PairedSample& sample, double eps, double stride,
                      std::int64_t m_min);

/// Window layout shared by scan_local and its permutation null: offsets
/// k*stride from the axis minimum until the window reaches the maximum.
std::vector<double> window_offsets(double lo, double hi, double eps, double stride);

/// Precomputed state for repeated local scans over re-paired y columns:
/// x-sorted order, window offsets and per-window x index ranges.
struct LocalScanPrep {
    double eps = 0.0;
    double stride = 0.0;
    std::int64_t m_min = 0;
    double x_min = 0.0, y_min = 0.0;
    std::vector<std::size_t> order; // sample indices sorted by x
    std::vector<double> x_sorted;
    std::vector<double> x_offsets, y_offsets;
    std::vector<std::pair<std::size_t, std::size_t>> x_ranges; // per x offset
};

LocalScanPrep prepare_local_scan(const PairedSample& sample, double eps, double stride,
                                 std::int64_t m_min);

/// Runs the local scan against y values given in x-sorted order
/// (y_sorted[r] pairs with x_sorted[r]).
ScanReport scan_local_prepared(const LocalScanPrep& prep, std::span<const double> y_sorted,
                               bool collect_records);

} // namespace condscan
