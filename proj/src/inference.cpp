#include "condscan/inference.hpp"

#include "condscan/grid.hpp"
#include "condscan/multivar.hpp"
#include "condscan/rng.hpp"
#include "condscan/threads.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace condscan {

namespace {

double add_one_p_value(double observed, const std::vector<double>& nulls) {
    std::size_t ge = 0;
    for (double v : nulls) {
        if (v >= observed) ++ge;
    }
    return static_cast<double>(1 + ge) / static_cast<double>(nulls.size() + 1);
}

ConditioningFamily::Kind grid_kind(ScanConfig::Mode mode) {
    return mode == ScanConfig::Mode::tails ? ConditioningFamily::Kind::upper_tails
                                           : ConditioningFamily::Kind::bounded_grid;
}

} // namespace

std::string ScanConfig::describe() const {
    std::ostringstream os;
    os.precision(12);
    switch (mode) {
        case Mode::bounded: os << "bounded-grid(levels=" << levels << ")"; break;
        case Mode::tails: os << "upper-tails(levels=" << levels << ")"; break;
        case Mode::local: {
            const double s = stride > 0.0 ? stride : eps / 2.0;
            os << "local-windows(eps=" << eps << ", stride=" << s << ")";
            break;
        }
        case Mode::mutual: os << "mutual(levels=" << levels << ")"; break;
    }
    return os.str();
}

double PermutationTestResult::null_quantile(double q) const {
    if (null_stats.empty()) return 0.0;
    std::vector<double> sorted = null_stats;
    std::sort(sorted.begin(), sorted.end());
    std::size_t rank = static_cast<std::size_t>(
        std::ceil(q * static_cast<double>(sorted.size())));
    rank = std::min(std::max<std::size_t>(rank, 1), sorted.size());
    return sorted[rank - 1];
}

PermutationTestResult permutation_test(const PairedSample& sample, const ScanConfig& config,
                                       int B, std::uint64_t seed) {
    if (B < 19) throw std::invalid_argument("permutation_test requires B >= 19");
    validate_sample(sample);
    if (config.mode == ScanConfig::Mode::mutual) {
        throw std::invalid_argument("mutual mode needs a MultiSample");
    }

    PermutationTestResult result;
    result.B = B;
    result.seed = seed;
    result.null_stats.assign(static_cast<std::size_t>(B), 0.0);
    const std::size_t n = sample.size();

    if (config.mode == ScanConfig::Mode::local) {
        if (!(config.eps > 0.0)) throw std::invalid_argument("local mode requires eps > 0");
        const double stride = config.stride > 0.0 ? config.stride : config.eps / 2.0;
        const LocalScanPrep prep = prepare_local_scan(sample, config.eps, stride, config.m_min);

        std::vector<double> y_sorted(n);
        for (std::size_t r = 0; r < n; ++r) y_sorted[r] = sample.y[prep.order[r]];
        result.observed_stat = scan_local_prepared(prep, y_sorted, false).max_abs_cor;

        parallel_for_index(static_cast<std::size_t>(B), [&](std::size_t b) {
            Rng rng(derive_seed(seed, b));
            const std::vector<std::size_t> perm = rng.permutation(n);
            std::vector<double> ys(n);
            for (std::size_t r = 0; r < n; ++r) ys[r] = sample.y[perm[prep.order[r]]];
            result.null_stats[b] = scan_local_prepared(prep, ys, false).max_abs_cor;
        });
    } else {
        const QuantileGrid grid = build_grid(sample, config.levels);
        std::vector<int> xbin(n), ybin(n);
        for (std::size_t k = 0; k < n; ++k) {
            xbin[k] = grid.x_bin(sample.x[k]);
            ybin[k] = grid.y_bin(sample.y[k]);
        }
        const ConditioningFamily::Kind kind = grid_kind(config.mode);
        {
            const SummedAreaTable sat = build_sat_binned(xbin, ybin, sample.x, sample.y,
                                                         grid.gx(), grid.gy());
            result.observed_stat =
                scan_prepared(sat, grid, kind, config.m_min, false).max_abs_cor;
        }
        parallel_for_index(static_cast<std::size_t>(B), [&](std::size_t b) {
            Rng rng(derive_seed(seed, b));
            const std::vector<std::size_t> perm = rng.permutation(n);
            std::vector<int> yb(n);
            std::vector<double> yv(n);
            for (std::size_t k = 0; k < n; ++k) {
                yb[k] = ybin[perm[k]];
                yv[k] = sample.y[perm[k]];
            }
            const SummedAreaTable sat =
                build_sat_binned(xbin, yb, sample.x, yv, grid.gx(), grid.gy());
            result.null_stats[b] =
                scan_prepared(sat, grid, kind, config.m_min, false).max_abs_cor;
        });
    }

    result.p_value = add_one_p_value(result.observed_stat, result.null_stats);
    return result;
}

PermutationTestResult permutation_test(const MultiSample& sample, const ScanConfig& config,
                                       int B, std::uint64_t seed) {
    if (B < 19) throw std::invalid_argument("permutation_test requires B >= 19");
    validate_sample(sample);
    const std::size_t n = sample.size();
    const std::size_t d = sample.dim();

    if (d == 2) {
        // Matches mutual_scan's bivariate delegation.
        PairedSample pair{sample.columns[0], sample.columns[1]};
        ScanConfig cfg = config;
        cfg.mode = ScanConfig::Mode::bounded;
        return permutation_test(pair, cfg, B, seed);
    }
    if (config.mode != ScanConfig::Mode::mutual) {
        throw std::invalid_argument("MultiSample permutation test expects mutual mode");
    }

    const MutualPrep prep = prepare_mutual(sample, config.levels, config.m_min, config.budget);

    PermutationTestResult result;
    result.B = B;
    result.seed = seed;
    result.null_stats.assign(static_cast<std::size_t>(B), 0.0);
    result.observed_stat =
        mutual_scan_prepared(prep, std::span<const std::vector<double>>(sample.columns),
                             std::span<const std::vector<int>>(prep.bins), false)
            .max_abs_cor;

    parallel_for_index(static_cast<std::size_t>(B), [&](std::size_t b) {
        Rng rng(derive_seed(seed, b));
        std::vector<std::vector<double>> cols(sample.columns);
        std::vector<std::vector<int>> bins(prep.bins);
        for (std::size_t c = 1; c < d; ++c) {
            const std::vector<std::size_t> perm = rng.permutation(n);
            for (std::size_t k = 0; k < n; ++k) {
                cols[c][k] = sample.columns[c][perm[k]];
                bins[c][k] = prep.bins[c][perm[k]];
            }
        }
        result.null_stats[b] =
            mutual_scan_prepared(prep, std::span<const std::vector<double>>(cols),
                                 std::span<const std::vector<int>>(bins), false)
                .max_abs_cor;
    });

    result.p_value = add_one_p_value(result.observed_stat, result.null_stats);
    return result;
}

} // namespace condscan
