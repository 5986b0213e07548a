#include <doctest.h>

#include "condscan/generators.hpp"
#include "condscan/inference.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

using namespace condscan;

namespace {

ScanConfig bounded_cfg(int levels, std::int64_t m_min) {
    ScanConfig c;
    c.mode = ScanConfig::Mode::bounded;
    c.levels = levels;
    c.m_min = m_min;
    return c;
}

} // namespace

TEST_CASE("B validation") {
    const PairedSample s = gen_indep_gauss(200, 1);
    CHECK_THROWS_AS(permutation_test(s, bounded_cfg(4, 10), 18, 1), std::invalid_argument);
    CHECK_NOTHROW(permutation_test(s, bounded_cfg(4, 10), 19, 1));
}

TEST_CASE("strong dependence earns the minimum p-value") {
    const PairedSample s = gen_sign_flip(2000, 7);
    const PermutationTestResult r = permutation_test(s, bounded_cfg(8, 30), 199, 7);
    CHECK(r.p_value == doctest::Approx(1.0 / 200.0));
    CHECK(r.observed_stat > 0.9);
    CHECK(static_cast<int>(r.null_stats.size()) == 199);
    // every null replicate sits below the observed statistic
    CHECK(*std::max_element(r.null_stats.begin(), r.null_stats.end()) < r.observed_stat);
}

TEST_CASE("independent data is not flagged") {
    const PairedSample s = gen_indep_gauss(1500, 3);
    const PermutationTestResult r = permutation_test(s, bounded_cfg(8, 30), 99, 3);
    CHECK(r.p_value > 0.05);
}

TEST_CASE("determinism: same inputs, same result; seeds matter") {
    const PairedSample s = gen_hidden_blocks(800, 5);
    const PermutationTestResult a = permutation_test(s, bounded_cfg(6, 20), 49, 11);
    const PermutationTestResult b = permutation_test(s, bounded_cfg(6, 20), 49, 11);
    CHECK(a.p_value == b.p_value);
    CHECK(a.observed_stat == b.observed_stat);
    CHECK(a.null_stats == b.null_stats);

    const PermutationTestResult c = permutation_test(s, bounded_cfg(6, 20), 49, 12);
    CHECK(a.null_stats != c.null_stats);
}

TEST_CASE("thread count does not change the result") {
    const PairedSample s = gen_hidden_blocks(600, 9);
#if defined(_WIN32)
    const PermutationTestResult a = permutation_test(s, bounded_cfg(6, 20), 39, 2);
    const PermutationTestResult b = permutation_test(s, bounded_cfg(6, 20), 39, 2);
    CHECK(a.null_stats == b.null_stats);
#else
    setenv("CONDSCAN_THREADS", "1", 1);
    const PermutationTestResult a = permutation_test(s, bounded_cfg(6, 20), 39, 2);
    setenv("CONDSCAN_THREADS", "7", 1);
    const PermutationTestResult b = permutation_test(s, bounded_cfg(6, 20), 39, 2);
    unsetenv("CONDSCAN_THREADS");
    CHECK(a.observed_stat == b.observed_stat);
    CHECK(a.null_stats == b.null_stats);
    CHECK(a.p_value == b.p_value);
#endif
}

TEST_CASE("monotonicity: larger nulls never lower the p-value") {
    const PairedSample s = gen_indep_uniform(500, 13);
    const PermutationTestResult r = permutation_test(s, bounded_cfg(6, 20), 39, 13);
    // recompute p with one null replaced by something enormous
    std::vector<double> bigger = r.null_stats;
    bigger[0] = 10.0;
    std::size_t ge_orig = 0, ge_big = 0;
    for (double v : r.null_stats) ge_orig += v >= r.observed_stat;
    for (double v : bigger) ge_big += v >= r.observed_stat;
    CHECK(ge_big >= ge_orig);
}

TEST_CASE("independent uniforms stay below the local null threshold") {
    const PairedSample s = gen_indep_uniform(3000, 41);
    ScanConfig cfg;
    cfg.mode = ScanConfig::Mode::local;
    cfg.eps = 0.3;
    cfg.m_min = 30;
    const PermutationTestResult r = permutation_test(s, cfg, 99, 41);
    CHECK(r.observed_stat < r.null_quantile(0.95));
    CHECK(r.p_value > 0.05);
}

TEST_CASE("local-mode permutation runs and is deterministic") {
    const PairedSample s = gen_hidden_blocks(2000, 17);
    ScanConfig cfg;
    cfg.mode = ScanConfig::Mode::local;
    cfg.eps = 0.5;
    cfg.m_min = 30;
    const PermutationTestResult a = permutation_test(s, cfg, 49, 17);
    const PermutationTestResult b = permutation_test(s, cfg, 49, 17);
    CHECK(a.p_value == b.p_value);
    CHECK(a.null_stats == b.null_stats);
    // local windows see independent block interiors: not significant
    CHECK(a.p_value > 0.05);
}

TEST_CASE("mutual-mode permutation flags the xor cube") {
    const MultiSample s = gen_xor_cube(4000, 23);
    ScanConfig cfg;
    cfg.mode = ScanConfig::Mode::mutual;
    cfg.levels = 2;
    cfg.m_min = 10;
    cfg.budget = 20000;
    const PermutationTestResult r = permutation_test(s, cfg, 99, 23);
    CHECK(r.p_value == doctest::Approx(0.01));
    CHECK(r.observed_stat > 0.95);
}

TEST_CASE("null quantile is an order statistic of the null stats") {
    const PairedSample s = gen_indep_uniform(400, 29);
    const PermutationTestResult r = permutation_test(s, bounded_cfg(6, 20), 99, 29);
    const double q95 = r.null_quantile(0.95);
    std::size_t below_or_equal = 0;
    for (double v : r.null_stats) below_or_equal += v <= q95;
    CHECK(static_cast<double>(below_or_equal) >= 0.95 * 99.0 - 1.0);
    CHECK(q95 <= *std::max_element(r.null_stats.begin(), r.null_stats.end()));
}

TEST_CASE("p-values are valid and roughly uniform under the null (reduced study)") {
    // 60 seeded replicates of the full test on independent data; the
    // acceptance suite runs the 500-replicate version
    int le_05 = 0, le_25 = 0, le_50 = 0;
    const int reps = 60;
    for (int r = 0; r < reps; ++r) {
        const PairedSample s = gen_indep_gauss(400, 1000 + static_cast<std::uint64_t>(r));
        const PermutationTestResult t =
            permutation_test(s, bounded_cfg(6, 20), 39, 2000 + static_cast<std::uint64_t>(r));
        le_05 += t.p_value <= 0.05;
        le_25 += t.p_value <= 0.25;
        le_50 += t.p_value <= 0.50;
    }
    CHECK(le_05 <= 9);                  // ~3 expected
    CHECK(std::abs(le_25 - 15) <= 10);  // ~15 expected
    CHECK(std::abs(le_50 - 30) <= 12);  // ~30 expected
}
