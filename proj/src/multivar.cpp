#include "condscan/multivar.hpp"

#include "condscan/dd.hpp"
#include "condscan/grid.hpp"
#include "condscan/moments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace condscan {

namespace {

Interval record_interval(double lo, double hi) {
    if (lo < hi) return Interval::bounded(lo, hi);
    return Interval::full();
}

/// Pairwise correlation structure of the selected rows. Pairs reuse the
/// bivariate moment conventions, so degeneracy and clamping behave
/// identically everywhere.
struct PairwiseStats {
    std::size_t d = 0;
    std::int64_t m = 0;
    std::vector<double> lin, sq;  // per column
    std::vector<double> cross;    // upper triangle, row-major

    CondMoments pair(std::size_t i, std::size_t j) const {
        CondMoments mom;
        mom.m = m;
        mom.sx = lin[i];
        mom.sy = lin[j];
        mom.sxx = sq[i];
        mom.syy = sq[j];
        mom.sxy = cross_at(i, j);
        return mom;
    }

    double cross_at(std::size_t i, std::size_t j) const {
        if (i > j) std::swap(i, j);
        return cross[i * d - i * (i + 1) / 2 + (j - i - 1)];
    }
};

template <typename RowFn>
PairwiseStats pairwise_over(std::span<const std::vector<double>> columns, std::int64_t m,
                            RowFn&& for_each_row) {
    const std::size_t d = columns.size();
    std::vector<CompensatedSum> lin(d), sq(d), cross(d * (d - 1) / 2);
    for_each_row([&](std::size_t row) {
        std::size_t c = 0;
        for (std::size_t i = 0; i < d; ++i) {
            const double v = columns[i][row];
            lin[i].add(v);
            sq[i].add(v * v);
            for (std::size_t j = i + 1; j < d; ++j, ++c) {
                cross[c].add(v * columns[j][row]);
            }
        }
    });
    PairwiseStats out;
    out.d = d;
    out.m = m;
    out.lin.resize(d);
    out.sq.resize(d);
    out.cross.resize(cross.size());
    for (std::size_t i = 0; i < d; ++i) {
        out.lin[i] = lin[i].value();
        out.sq[i] = sq[i].value();
    }
    for (std::size_t c = 0; c < cross.size(); ++c) out.cross[c] = cross[c].value();
    return out;
}

} // namespace

double CondCorrMatrix::max_off_diag(std::size_t* pi, std::size_t* pj) const {
    double best = 0.0;
    std::size_t bi = 0, bj = 1;
    bool first = true;
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const double a = std::fabs(at(i, j));
            if (first || a > best) {
                first = false;
                best = a;
                bi = i;
                bj = j;
            }
        }
    }
    if (pi) *pi = bi;
    if (pj) *pj = bj;
    return best;
}

CondCorrMatrix cond_corr_matrix(const MultiSample& sample, const Rectangle& rect) {
    validate_sample(sample);
    const std::size_t d = sample.dim();
    if (rect.dim() != d) {
        throw std::invalid_argument("cond_corr_matrix: rectangle dimension != sample dimension");
    }

    std::vector<std::size_t> rows;
    const std::size_t n = sample.size();
    for (std::size_t k = 0; k < n; ++k) {
        bool in = true;
        for (std::size_t a = 0; a < d && in; ++a) {
            in = rect.axis(a).contains(sample.columns[a][k]);
        }
        if (in) rows.push_back(k);
    }

    CondCorrMatrix out;
    out.d = d;
    out.rect = rect;
    out.m = static_cast<std::int64_t>(rows.size());
    out.corr.assign(d * d, 0.0);
    for (std::size_t i = 0; i < d; ++i) out.corr[i * d + i] = 1.0;
    if (rows.empty()) {
        out.empty_default = true;
        return out;
    }

    const PairwiseStats stats = pairwise_over(
        std::span<const std::vector<double>>(sample.columns), out.m,
        [&](auto&& fn) { for (std::size_t r : rows) fn(r); });
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i + 1; j < d; ++j) {
            const double c = conditional_correlation(stats.pair(i, j));
            out.corr[i * d + j] = c;
            out.corr[j * d + i] = c;
        }
    }
    return out;
}

MutualPrep prepare_mutual(const MultiSample& sample, int levels, std::int64_t m_min,
                          std::size_t budget) {
    validate_sample(sample);
    if (budget == 0) throw std::invalid_argument("mutual_scan requires budget > 0");
    if (m_min < 2) throw std::invalid_argument("mutual_scan requires m_min >= 2");
    if (levels < 2) throw std::invalid_argument("mutual_scan requires levels >= 2");

    MutualPrep prep;
    prep.d = static_cast<int>(sample.dim());
    prep.m_min = m_min;
    prep.budget = budget;
    prep.tails = sample.dim() > 3;

    const std::size_t n = sample.size();
    for (const auto& col : sample.columns) {
        const std::vector<double> cuts = build_axis_cuts(col, levels);
        const auto [mn, mx] = std::minmax_element(col.begin(), col.end());
        std::vector<double> edges;
        edges.push_back(*mn);
        edges.insert(edges.end(), cuts.begin(), cuts.end());
        edges.push_back(*mx);
        prep.g.push_back(static_cast<int>(cuts.size()) + 1);
        std::vector<int> b(n);
        for (std::size_t k = 0; k < n; ++k) {
            b[k] = static_cast<int>(std::upper_bound(cuts.begin(), cuts.end(), col[k]) -
                                    cuts.begin());
        }
        prep.edges.push_back(std::move(edges));
        prep.bins.push_back(std::move(b));
    }

    // Group rows by the first-axis bin (stable counting sort); the first
    // column is never permuted, so replicates reuse this order.
    const int g0 = prep.g[0];
    std::vector<std::size_t> counts(g0 + 1, 0);
    for (std::size_t k = 0; k < n; ++k) counts[prep.bins[0][k] + 1]++;
    for (int b = 0; b < g0; ++b) counts[b + 1] += counts[b];
    prep.group_start = counts;
    prep.axis0_order.resize(n);
    std::vector<std::size_t> fill(counts.begin(), counts.end() - 1);
    for (std::size_t k = 0; k < n; ++k) {
        prep.axis0_order[fill[prep.bins[0][k]]++] = k;
    }
    return prep;
}

ScanReport mutual_scan_prepared(const MutualPrep& prep,
                                std::span<const std::vector<double>> columns,
                                std::span<const std::vector<int>> bins,
                                bool collect_records) {
    const int d = prep.d;
    ScanReport rep;
    rep.m_min = prep.m_min;

    double best_abs = 0.0;
    bool has_best = false;
    RectRecord best{Rectangle::full(2)};
    std::vector<double> best_matrix;
    std::size_t rect_counter = 0;
    bool done = false;

    // lo/hi bin range per axis, chosen outer-to-inner in axis order
    std::vector<int> lo(d, 0), hi(d, 0);
    std::vector<std::size_t> scratch_rows;

    auto evaluate = [&](const std::vector<std::size_t>& rows) {
        RectRecord rec{[&] {
            std::vector<Interval> axes;
            axes.reserve(d);
            for (int a = 0; a < d; ++a) {
                if (prep.tails) {
                    axes.push_back(Interval::upper_tail(prep.edges[a][lo[a]]));
                } else {
                    axes.push_back(record_interval(prep.edges[a][lo[a]], prep.edges[a][hi[a]]));
                }
            }
            return Rectangle(std::move(axes));
        }()};
        rec.key = {static_cast<int>(rect_counter), 0, 0, 0};
        rec.m = static_cast<std::int64_t>(rows.size());
        ++rep.total_rects;
        ++rect_counter;
        if (rec.m < prep.m_min) {
            rec.skipped = true;
            ++rep.skipped;
        } else {
            const PairwiseStats stats = pairwise_over(
                columns, rec.m, [&](auto&& fn) { for (std::size_t r : rows) fn(r); });
            double pair_best = -1.0;
            for (int i = 0; i < d; ++i) {
                for (int j = i + 1; j < d; ++j) {
                    const CondMoments mom = stats.pair(i, j);
                    const double c = conditional_correlation(mom);
                    if (std::fabs(c) > pair_best) {
                        pair_best = std::fabs(c);
                        rec.cor = c;
                        rec.cov = conditional_covariance(mom).value_or(0.0);
                        rec.pair_i = i;
                        rec.pair_j = j;
                    }
                }
            }
            if (!has_best || std::fabs(rec.cor) > best_abs) {
                has_best = true;
                best_abs = std::fabs(rec.cor);
                best = rec;
                best_matrix.assign(static_cast<std::size_t>(d) * d, 0.0);
                for (int i = 0; i < d; ++i) {
                    best_matrix[static_cast<std::size_t>(i) * d + i] = 1.0;
                    for (int j = i + 1; j < d; ++j) {
                        const double c = conditional_correlation(stats.pair(i, j));
                        best_matrix[static_cast<std::size_t>(i) * d + j] = c;
                        best_matrix[static_cast<std::size_t>(j) * d + i] = c;
                    }
                }
            }
        }
        if (collect_records) rep.records.push_back(std::move(rec));
    };

    // Recursive product enumeration; axis 0 uses the precomputed groups,
    // deeper axes filter the surviving row list.
    auto recurse = [&](auto&& self, int axis, const std::vector<std::size_t>& rows) -> void {
        if (done) return;
        if (axis == d) {
            if (rep.total_rects >= prep.budget) {
                rep.truncated = true;
                done = true;
                return;
            }
            evaluate(rows);
            return;
        }
        const int ga = prep.g[axis];
        for (int a = 0; a < ga && !done; ++a) {
            const int b_end = prep.tails ? ga : a + 1;
            for (int b = b_end; b <= ga && !done; ++b) {
                lo[axis] = a;
                hi[axis] = b;
                std::vector<std::size_t> next;
                if (axis == 0) {
                    next.assign(prep.axis0_order.begin() + prep.group_start[a],
                                prep.axis0_order.begin() + prep.group_start[b]);
                } else {
                    next.reserve(rows.size());
                    for (std::size_t r : rows) {
                        const int bb = bins[axis][r];
                        if (bb >= a && bb < b) next.push_back(r);
                    }
                }
                self(self, axis + 1, next);
            }
        }
    };

    recurse(recurse, 0, scratch_rows);

    rep.max_abs_cor = has_best ? best_abs : 0.0;
    rep.has_argmax = has_best;
    if (has_best) {
        rep.argmax = best;
        rep.argmax_d = static_cast<std::size_t>(d);
        rep.argmax_corr = best_matrix;
    }
    return rep;
}

ScanReport mutual_scan(const MultiSample& sample, int levels, std::int64_t m_min,
                       std::size_t budget) {
    validate_sample(sample);
    if (budget == 0) throw std::invalid_argument("mutual_scan requires budget > 0");
    if (sample.dim() == 2) {
        // Definitional coincidence with the bivariate grid scan; route
        // through it so the two agree exactly.
        PairedSample pair{sample.columns[0], sample.columns[1]};
        const QuantileGrid grid = build_grid(pair, levels);
        const SummedAreaTable sat = build_sat(pair, grid);
        ScanReport rep = scan_prepared(sat, grid, ConditioningFamily::Kind::bounded_grid,
                                       m_min, true, budget);
        rep.family = ConditioningFamily::bounded_grid(levels).describe();
        return rep;
    }
    const MutualPrep prep = prepare_mutual(sample, levels, m_min, budget);
    ScanReport rep = mutual_scan_prepared(prep,
                                          std::span<const std::vector<double>>(sample.columns),
                                          std::span<const std::vector<int>>(prep.bins), true);
    std::ostringstream os;
    os << (prep.tails ? "mutual-tails" : "mutual-bounded") << "(levels=" << levels
       << ", d=" << sample.dim() << ")";
    rep.family = os.str();
    return rep;
}

} // namespace condscan
