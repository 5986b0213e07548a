#pragma once

#include "condscan/interval.hpp"
#include "condscan/sample.hpp"
#include "condscan/scan.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace condscan {

/// Pairwise conditional correlations given a hyperrectangle event.
/// Diagonal is exactly 1; any coordinate that is degenerate inside the
/// event contributes identity rows (Kronecker-delta convention). An
/// empty event yields the identity with empty_default set.
struct CondCorrMatrix {
    std::size_t d = 0;
    std::vector<double> corr; // row-major d x d
    Rectangle rect{Rectangle::full(2)};
    std::int64_t m = 0;
    bool empty_default = false;

    double at(std::size_t i, std::size_t j) const { return corr[i * d + j]; }

    /// Largest |entry| off the diagonal and its index pair.
    double max_off_diag(std::size_t* pi = nullptr, std::size_t* pj = nullptr) const;
};

CondCorrMatrix cond_corr_matrix(const MultiSample& sample, const Rectangle& rect);

/// Per-axis quantile binning plus row order grouped by the first axis,
/// reused across permutation replicates.
struct MutualPrep {
    int d = 0;
    std::vector<std::vector<double>> edges; // per axis, g+1 edges
    std::vector<std::vector<int>> bins;     // per axis, per row
    std::vector<int> g;                     // bin counts
    std::int64_t m_min = 0;
    std::size_t budget = 0;
    bool tails = false;                     // family: d > 3 switches to upper tails
    std::vector<std::size_t> axis0_order;   // rows sorted by first-axis bin
    std::vector<std::size_t> group_start;   // per bin of axis 0 (size g[0]+1)
};

MutualPrep prepare_mutual(const MultiSample& sample, int levels, std::int64_t m_min,
                          std::size_t budget);

/// Scan with explicit column/bin arrays (permutation replicates pass
/// re-paired copies of every axis except the first).
ScanReport mutual_scan_prepared(const MutualPrep& prep,
                                std::span<const std::vector<double>> columns,
                                std::span<const std::vector<int>> bins,
                                bool collect_records);

/// Enumerates hyperrectangles as products of per-axis grid intervals
/// (all bounded products for d <= 3, upper-tail products beyond) and
/// reports the extreme off-diagonal conditional correlation. d == 2
/// delegates to the grid-engine scan so both paths agree exactly.
ScanReport mutual_scan(const MultiSample& sample, int levels, std::int64_t m_min,
                       std::size_t budget);

} // namespace condscan
