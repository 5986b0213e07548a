#include "condscan/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condscan {

double quantile_type7(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw std::invalid_argument("quantile of empty vector");
    const double h = static_cast<double>(sorted.size() - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

std::vector<double> build_axis_cuts(std::span<const double> column, int levels) {
    std::vector<double> sorted(column.begin(), column.end());
    std::sort(sorted.begin(), sorted.end());
    const double mn = sorted.front();
    const double mx = sorted.back();

    // Smallest value above the minimum; snap target for degenerate cuts.
    double above_min = mx;
    bool has_above = false;
    for (double v : sorted) {
        if (v > mn) {
            above_min = v;
            has_above = true;
            break;
        }
    }

    std::vector<double> cuts;
    for (int k = 1; k < levels; ++k) {
        double c = quantile_type7(sorted, static_cast<double>(k) / levels);
        if (c <= mn) {
            if (!has_above) continue; // constant column
            c = above_min;
        }
        if (c > mx) c = mx;
        if (cuts.empty() || c > cuts.back()) cuts.push_back(c);
    }
    return cuts;
}

QuantileGrid build_grid(const PairedSample& sample, int levels) {
    if (levels < 2) throw std::invalid_argument("build_grid requires levels >= 2");
    validate_sample(sample);
    if (sample.size() < static_cast<std::size_t>(levels)) {
        throw std::invalid_argument("build_grid requires n >= levels");
    }
    QuantileGrid g;
    g.x_cuts = build_axis_cuts(sample.x, levels);
    g.y_cuts = build_axis_cuts(sample.y, levels);
    const auto [xmin, xmax] = std::minmax_element(sample.x.begin(), sample.x.end());
    const auto [ymin, ymax] = std::minmax_element(sample.y.begin(), sample.y.end());
    g.x_min = *xmin;
    g.x_max = *xmax;
    g.y_min = *ymin;
    g.y_max = *ymax;
    return g;
}

double QuantileGrid::x_edge(int i) const {
    if (i <= 0) return x_min;
    if (i >= gx()) return x_max;
    return x_cuts[static_cast<std::size_t>(i) - 1];
}

double QuantileGrid::y_edge(int j) const {
    if (j <= 0) return y_min;
    if (j >= gy()) return y_max;
    return y_cuts[static_cast<std::size_t>(j) - 1];
}

namespace {
int bin_of(const std::vector<double>& cuts, double v) {
    // first cut > v, i.e. bins are [edge_i, edge_{i+1}) with the last closed
    return static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), v) - cuts.begin());
}
} // namespace

int QuantileGrid::x_bin(double v) const { return bin_of(x_cuts, v); }
int QuantileGrid::y_bin(double v) const { return bin_of(y_cuts, v); }

SummedAreaTable::SummedAreaTable(int gx, int gy) : gx_(gx), gy_(gy) {
    if (gx < 1 || gy < 1) throw std::invalid_argument("SAT needs at least one bin per axis");
    const std::size_t cells = static_cast<std::size_t>(gx + 1) * (gy + 1);
    count_.assign(cells, 0);
    sx_.assign(cells, DD{});
    sy_.assign(cells, DD{});
    sxy_.assign(cells, DD{});
    sxx_.assign(cells, DD{});
    syy_.assign(cells, DD{});
}

void SummedAreaTable::accumulate(int i, int j, double xv, double yv) {
    // cell (i, j) is stored at prefix slot (i+1, j+1)
    const std::size_t k = at(i + 1, j + 1);
    count_[k] += 1;
    sx_[k] = dd_add(sx_[k], xv);
    sy_[k] = dd_add(sy_[k], yv);
    sxy_[k] = dd_add(sxy_[k], xv * yv);
    sxx_[k] = dd_add(sxx_[k], xv * xv);
    syy_[k] = dd_add(syy_[k], yv * yv);
}

void SummedAreaTable::finalize() {
    // row-major prefix accumulation
    for (int i = 1; i <= gx_; ++i) {
        for (int j = 1; j <= gy_; ++j) {
            const std::size_t k = at(i, j);
            const std::size_t up = at(i - 1, j);
            const std::size_t left = at(i, j - 1);
            const std::size_t diag = at(i - 1, j - 1);
            count_[k] += count_[up] + count_[left] - count_[diag];
            sx_[k] = dd_sub(dd_add(dd_add(sx_[k], sx_[up]), sx_[left]), sx_[diag]);
            sy_[k] = dd_sub(dd_add(dd_add(sy_[k], sy_[up]), sy_[left]), sy_[diag]);
            sxy_[k] = dd_sub(dd_add(dd_add(sxy_[k], sxy_[up]), sxy_[left]), sxy_[diag]);
            sxx_[k] = dd_sub(dd_add(dd_add(sxx_[k], sxx_[up]), sxx_[left]), sxx_[diag]);
            syy_[k] = dd_sub(dd_add(dd_add(syy_[k], syy_[up]), syy_[left]), syy_[diag]);
        }
    }
    finalized_ = true;
}

CondMoments SummedAreaTable::rect(int i0, int i1, int j0, int j1) const {
    if (!finalized_) throw std::logic_error("SAT readout before finalize");
    if (i0 < 0 || j0 < 0 || i0 >= i1 || j0 >= j1 || i1 > gx_ || j1 > gy_) {
        throw std::invalid_argument("SAT rectangle out of range");
    }
    const std::size_t a = at(i1, j1);
    const std::size_t b = at(i0, j1);
    const std::size_t c = at(i1, j0);
    const std::size_t d = at(i0, j0);
    auto read = [&](const std::vector<DD>& p) {
        return dd_value(dd_add(dd_sub(dd_sub(p[a], p[b]), p[c]), p[d]));
    };
    CondMoments out;
    out.m = count_[a] - count_[b] - count_[c] + count_[d];
    out.sx = read(sx_);
    out.sy = read(sy_);
    out.sxy = read(sxy_);
    out.sxx = read(sxx_);
    out.syy = read(syy_);
    return out;
}

std::int64_t SummedAreaTable::rect_count(int i0, int i1, int j0, int j1) const {
    return count_[at(i1, j1)] - count_[at(i0, j1)] - count_[at(i1, j0)] + count_[at(i0, j0)];
}

std::int64_t SummedAreaTable::cell_count(int i, int j) const {
    return rect_count(i, i + 1, j, j + 1);
}

SummedAreaTable build_sat(const PairedSample& sample, const QuantileGrid& grid) {
    SummedAreaTable sat(grid.gx(), grid.gy());
    for (std::size_t k = 0; k < sample.size(); ++k) {
        sat.accumulate(grid.x_bin(sample.x[k]), grid.y_bin(sample.y[k]), sample.x[k], sample.y[k]);
    }
    sat.finalize();
    return sat;
}

SummedAreaTable build_sat_binned(std::span<const int> xbin, std::span<const int> ybin,
                                 std::span<const double> x, std::span<const double> y,
                                 int gx, int gy) {
    SummedAreaTable sat(gx, gy);
    for (std::size_t k = 0; k < xbin.size(); ++k) {
        sat.accumulate(xbin[k], ybin[k], x[k], y[k]);
    }
    sat.finalize();
    return sat;
}

SupportReport support_product_check(const PairedSample& sample, const QuantileGrid& grid) {
    const SummedAreaTable sat = build_sat(sample, grid);
    SupportReport rep;
    rep.gx = grid.gx();
    rep.gy = grid.gy();
    std::vector<std::int64_t> row(rep.gx, 0), col(rep.gy, 0);
    for (int i = 0; i < rep.gx; ++i) {
        for (int j = 0; j < rep.gy; ++j) {
            const std::int64_t c = sat.cell_count(i, j);
            row[i] += c;
            col[j] += c;
        }
    }
    for (int i = 0; i < rep.gx; ++i) {
        for (int j = 0; j < rep.gy; ++j) {
            if (sat.cell_count(i, j) == 0 && row[i] > 0 && col[j] > 0) {
                ++rep.flagged;
                rep.cells.emplace_back(i, j);
            }
        }
    }
    rep.fraction = static_cast<double>(rep.flagged) /
                   (static_cast<double>(rep.gx) * static_cast<double>(rep.gy));
    return rep;
}

} // namespace condscan
