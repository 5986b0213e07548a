#pragma once

#include "condscan/sample.hpp"
#include "condscan/scan.hpp"

#include <cstdint>
#include <vector>

namespace condscan {

/// Which scan statistic a permutation test calibrates.
struct ScanConfig {
    enum class Mode { bounded, tails, local, mutual };

    Mode mode = Mode::bounded;
    int levels = 12;
    std::int64_t m_min = 30;
    double eps = 0.0;
    double stride = 0.0;          // local; 0 means eps / 2
    std::size_t budget = 20000;   // mutual

    std::string describe() const;
};

struct PermutationTestResult {
    double observed_stat = 0.0;
    std::vector<double> null_stats; // replicate order b = 0..B-1
    double p_value = 1.0;           // (1 + #{null >= observed}) / (B + 1)
    int B = 0;
    std::uint64_t seed = 0;

    /// Null quantile at level q (order statistic ceil(q * B)).
    double null_quantile(double q) const;
};

/// Destroys the pairing by permuting the y column with independent
/// seeded permutations per replicate; quantile grids depend only on the
/// marginals, so they are built once and shared with every replicate.
/// Requires B >= 19.
PermutationTestResult permutation_test(const PairedSample& sample, const ScanConfig& config,
                                       int B, std::uint64_t seed);

/// Multivariate variant: each column except the first is permuted
/// independently within a replicate.
PermutationTestResult permutation_test(const MultiSample& sample, const ScanConfig& config,
                                       int B, std::uint64_t seed);

} // namespace condscan
