#include "condscan/scan.hpp"

#include "condscan/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace condscan {

namespace {

Interval record_interval(double lo, double hi) {
    // A degenerate span only arises for a constant column, where the bin
    // union is the whole axis anyway.
    if (lo < hi) return Interval::bounded(lo, hi);
    return Interval::full();
}

bool better(double abs_cor, const std::array<int, 4>& key, double best_abs,
            const std::array<int, 4>& best_key) {
    if (abs_cor != best_abs) return abs_cor > best_abs;
    return key < best_key;
}

struct MaxTracker {
    double max_abs = 0.0;
    bool has = false;
    RectRecord arg{Rectangle::full(2)};

    void offer(const RectRecord& rec) {
        const double a = std::fabs(rec.cor);
        if (!has || better(a, rec.key, max_abs, arg.key)) {
            has = true;
            max_abs = a;
            arg = rec;
        }
    }

    void publish(ScanReport& rep) const {
        rep.max_abs_cor = has ? max_abs : 0.0;
        rep.has_argmax = has;
        if (has) {
            rep.argmax = arg;
            rep.argmax_d = 2;
            rep.argmax_corr = {1.0, arg.cor, arg.cor, 1.0};
        }
    }
};

} // namespace

std::string ConditioningFamily::describe() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind) {
        case Kind::bounded_grid: os << "bounded-grid(levels=" << levels << ")"; break;
        case Kind::upper_tails: os << "upper-tails(levels=" << levels << ")"; break;
        case Kind::local_windows: os << "local-windows(eps=" << eps << ")"; break;
    }
    return os.str();
}

ScanReport scan_prepared(const SummedAreaTable& sat, const QuantileGrid& grid,
                         ConditioningFamily::Kind kind, std::int64_t m_min,
                         bool collect_records, std::size_t max_rects) {
    if (m_min < 2) throw std::invalid_argument("scan requires m_min >= 2");
    ScanReport rep;
    rep.m_min = m_min;
    MaxTracker tracker;

    auto process = [&](int i0, int i1, int j0, int j1, Rectangle rect,
                       std::array<int, 4> key) {
        RectRecord rec{std::move(rect)};
        rec.key = key;
        const CondMoments mom = sat.rect(i0, i1, j0, j1);
        rec.m = mom.m;
        ++rep.total_rects;
        if (mom.m < m_min) {
            rec.skipped = true;
            ++rep.skipped;
        } else {
            rec.cov = conditional_covariance(mom).value();
            rec.cor = conditional_correlation(mom);
            tracker.offer(rec);
        }
        if (collect_records) rep.records.push_back(std::move(rec));
    };

    const int gx = grid.gx();
    const int gy = grid.gy();
    bool done = false;
    auto budget_hit = [&] {
        if (max_rects > 0 && rep.total_rects >= max_rects) {
            rep.truncated = true;
            done = true;
        }
        return done;
    };

    if (kind == ConditioningFamily::Kind::bounded_grid) {
        for (int i0 = 0; i0 < gx && !done; ++i0) {
            for (int i1 = i0 + 1; i1 <= gx && !done; ++i1) {
                for (int j0 = 0; j0 < gy && !done; ++j0) {
                    for (int j1 = j0 + 1; j1 <= gy; ++j1) {
                        if (budget_hit()) break;
                        process(i0, i1, j0, j1,
                                Rectangle::box2(record_interval(grid.x_edge(i0), grid.x_edge(i1)),
                                                record_interval(grid.y_edge(j0), grid.y_edge(j1))),
                                {i0, i1, j0, j1});
                    }
                }
            }
        }
    } else if (kind == ConditioningFamily::Kind::upper_tails) {
        for (int i = 0; i < gx && !done; ++i) {
            for (int j = 0; j < gy; ++j) {
                if (budget_hit()) break;
                process(i, gx, j, gy,
                        Rectangle::box2(Interval::upper_tail(grid.x_edge(i)),
                                        Interval::upper_tail(grid.y_edge(j))),
                        {i, j, 0, 0});
            }
        }
    } else {
        throw std::invalid_argument("scan_prepared handles grid families only");
    }

    tracker.publish(rep);
    return rep;
}

ScanReport scan(const PairedSample& sample, const ConditioningFamily& family,
                int levels, std::int64_t m_min) {
    if (family.kind == ConditioningFamily::Kind::local_windows) {
        return scan_local(sample, family.eps, family.eps / 2.0, m_min);
    }
    if (m_min < 2) throw std::invalid_argument("scan requires m_min >= 2");
    validate_sample(sample);
    const QuantileGrid grid = build_grid(sample, levels);
    const SummedAreaTable sat = build_sat(sample, grid);
    ScanReport rep = scan_prepared(sat, grid, family.kind, m_min, true);
    ConditioningFamily described = family;
    described.levels = levels;
    rep.family = described.describe();
    return rep;
}

std::vector<double> window_offsets(double lo, double hi, double eps, double stride) {
    std::vector<double> offs;
    for (std::size_t k = 0;; ++k) {
        const double off = static_cast<double>(k) * stride;
        offs.push_back(off);
        if (lo + off + eps >= hi) break;
    }
    return offs;
}

LocalScanPrep prepare_local_scan(const PairedSample& sample, double eps, double stride,
                                 std::int64_t m_min) {
    if (!(eps > 0.0)) throw std::invalid_argument("scan_local requires eps > 0");
    if (!(stride > 0.0) || stride > eps) {
        throw std::invalid_argument("scan_local requires 0 < stride <= eps");
    }
    if (m_min < 2) throw std::invalid_argument("scan_local requires m_min >= 2");
    validate_sample(sample);

    LocalScanPrep prep;
    prep.eps = eps;
    prep.stride = stride;
    prep.m_min = m_min;

    const std::size_t n = sample.size();
    prep.order.resize(n);
    std::iota(prep.order.begin(), prep.order.end(), std::size_t{0});
    std::sort(prep.order.begin(), prep.order.end(),
              [&](std::size_t a, std::size_t b) {
                  return sample.x[a] != sample.x[b] ? sample.x[a] < sample.x[b] : a < b;
              });
    prep.x_sorted.resize(n);
    for (std::size_t r = 0; r < n; ++r) prep.x_sorted[r] = sample.x[prep.order[r]];

    prep.x_min = prep.x_sorted.front();
    const double x_max = prep.x_sorted.back();
    const auto [ymin_it, ymax_it] = std::minmax_element(sample.y.begin(), sample.y.end());
    prep.y_min = *ymin_it;

    const double span = std::max(x_max - prep.x_min, *ymax_it - prep.y_min);
    if (span / stride > 1e5) {
        throw std::invalid_argument("scan_local: stride too small for the data range");
    }

    prep.x_offsets = window_offsets(prep.x_min, x_max, eps, stride);
    prep.y_offsets = window_offsets(prep.y_min, *ymax_it, eps, stride);

    prep.x_ranges.reserve(prep.x_offsets.size());
    for (double off : prep.x_offsets) {
        const double lo = prep.x_min + off;
        const double hi = lo + eps;
        const auto b = std::lower_bound(prep.x_sorted.begin(), prep.x_sorted.end(), lo);
        const auto e = std::upper_bound(prep.x_sorted.begin(), prep.x_sorted.end(), hi);
        prep.x_ranges.emplace_back(static_cast<std::size_t>(b - prep.x_sorted.begin()),
                                   static_cast<std::size_t>(e - prep.x_sorted.begin()));
    }
    return prep;
}

ScanReport scan_local_prepared(const LocalScanPrep& prep, std::span<const double> y_sorted,
                               bool collect_records) {
    ScanReport rep;
    rep.m_min = prep.m_min;
    MaxTracker tracker;
    const MomentKernelFn kernel = moment_kernel();

    for (std::size_t kx = 0; kx < prep.x_offsets.size(); ++kx) {
        const double xlo = prep.x_min + prep.x_offsets[kx];
        const double xhi = xlo + prep.eps;
        const auto [rb, re] = prep.x_ranges[kx];
        for (std::size_t ky = 0; ky < prep.y_offsets.size(); ++ky) {
            const double ylo = prep.y_min + prep.y_offsets[ky];
            const double yhi = ylo + prep.eps;

            MomentSums s{};
            if (re > rb) {
                s = kernel(prep.x_sorted.data() + rb, y_sorted.data() + rb, re - rb,
                           xlo, xhi, ylo, yhi);
            }
            const CondMoments mom = from_sums(s);

            RectRecord rec{Rectangle::box2(Interval::bounded(xlo, xhi),
                                           Interval::bounded(ylo, yhi))};
            rec.key = {static_cast<int>(kx), static_cast<int>(ky), 0, 0};
            rec.m = mom.m;
            ++rep.total_rects;
            if (mom.m < prep.m_min) {
                rec.skipped = true;
                ++rep.skipped;
            } else {
                rec.cov = conditional_covariance(mom).value();
                rec.cor = conditional_correlation(mom);
                tracker.offer(rec);
            }
            if (collect_records) rep.records.push_back(std::move(rec));
        }
    }

    tracker.publish(rep);
    return rep;
}

ScanReport scan_local(const PairedSample& sample, double eps, double stride,
                      std::int64_t m_min) {
    const LocalScanPrep prep = prepare_local_scan(sample, eps, stride, m_min);
    std::vector<double> y_sorted(sample.size());
    for (std::size_t r = 0; r < sample.size(); ++r) y_sorted[r] = sample.y[prep.order[r]];
    ScanReport rep = scan_local_prepared(prep, y_sorted, true);
    std::ostringstream os;
    os.precision(12);
    os << "local-windows(eps=" << eps << ", stride=" << stride << ")";
    rep.family = os.str();
    return rep;
}

} // namespace condscan
