#include <doctest.h>

#include "condscan/generators.hpp"
#include "condscan/moments.hpp"
#include "condscan/scan.hpp"

#include <cmath>
#include <vector>

using namespace condscan;

TEST_CASE("parameter validation") {
    const PairedSample s = gen_indep_uniform(100, 1);
    CHECK_THROWS_AS(scan(s, ConditioningFamily::bounded_grid(4), 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(scan_local(s, 0.0, 0.1, 30), std::invalid_argument);
    CHECK_THROWS_AS(scan_local(s, 0.5, 0.0, 30), std::invalid_argument);
    CHECK_THROWS_AS(scan_local(s, 0.5, 0.6, 30), std::invalid_argument);
    CHECK_THROWS_AS(scan_local(s, 0.5, 0.25, 1), std::invalid_argument);
    // a stride that would enumerate >1e5 offsets per axis is a config error
    CHECK_THROWS_AS(scan_local(s, 1e-7, 1e-7, 2), std::invalid_argument);
}

TEST_CASE("window offsets tile the range with the final window reaching the max") {
    const std::vector<double> offs = window_offsets(0.0, 3.0, 0.5, 0.25);
    REQUIRE(offs.size() == 11);
    CHECK(offs.front() == 0.0);
    CHECK(offs.back() == doctest::Approx(2.5));
    CHECK(0.0 + offs.back() + 0.5 >= 3.0);

    CHECK(window_offsets(0.0, 0.3, 0.5, 0.25).size() == 1);
}

TEST_CASE("rectangle counting and skip accounting") {
    const PairedSample s = gen_indep_uniform(400, 3);
    const ScanReport rep = scan(s, ConditioningFamily::bounded_grid(4), 4, 2);
    // 4 bins per axis: C(5,2)^2 rectangles
    CHECK(rep.total_rects == 100);
    CHECK(rep.records.size() == 100);
    CHECK(rep.skipped < rep.total_rects);

    // an m_min larger than n skips everything; the max statistic is 0
    const ScanReport all_skipped = scan(s, ConditioningFamily::bounded_grid(4), 4, 1000);
    CHECK(all_skipped.skipped == all_skipped.total_rects);
    CHECK(all_skipped.max_abs_cor == 0.0);
    CHECK_FALSE(all_skipped.has_argmax);
}

TEST_CASE("tails family size is gx * gy") {
    const PairedSample s = gen_indep_uniform(400, 4);
    const ScanReport rep = scan(s, ConditioningFamily::upper_tails(4), 4, 2);
    CHECK(rep.total_rects == 16);
}

TEST_CASE("independent data stays under the simulated null bound") {
    // null quantile for this configuration computed by simulation: the
    // max over bounded rectangles at levels=8, n=1e4 concentrates
    // around 0.21 with a 95% quantile near 0.26
    const PairedSample s = gen_indep_gauss(10000, 20260810);
    const ScanReport rep = scan(s, ConditioningFamily::bounded_grid(8), 8, 30);
    CHECK(rep.max_abs_cor < 0.30);
    CHECK(rep.max_abs_cor > 0.03);
}

TEST_CASE("sign-flip: blind on centered squares, full correlation on the positive quadrant") {
    const PairedSample s = gen_sign_flip(20000, 7);

    const Rectangle square =
        Rectangle::box2(Interval::bounded(-1.0, 1.0), Interval::bounded(-1.0, 1.0));
    const CondMoments m = conditional_moments(s, square);
    CHECK(std::fabs(conditional_correlation(m)) < 0.05);

    const Rectangle quadrant =
        Rectangle::box2(Interval::upper_tail(0.0), Interval::upper_tail(0.0));
    const CondMoments q = conditional_moments(s, quadrant);
    CHECK(conditional_correlation(q) > 0.999);

    // the tail scan finds the quadrant on its own
    const ScanReport rep = scan(s, ConditioningFamily::upper_tails(8), 8, 30);
    CHECK(rep.max_abs_cor > 0.999);
    REQUIRE(rep.has_argmax);
    CHECK(rep.argmax.rect.axis(0).kind() == Interval::Kind::upper_tail);
}

TEST_CASE("bounded family nests: doubling levels never lowers the max") {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
        const PairedSample s = gen_hidden_blocks(4000, seed);
        const ScanReport r4 = scan(s, ConditioningFamily::bounded_grid(4), 4, 30);
        const ScanReport r8 = scan(s, ConditioningFamily::bounded_grid(8), 8, 30);
        CHECK(r8.max_abs_cor >= r4.max_abs_cor - 1e-15);
    }
}

TEST_CASE("scan is deterministic") {
    const PairedSample s = gen_hidden_blocks(3000, 42);
    const ScanReport a = scan(s, ConditioningFamily::bounded_grid(6), 6, 30);
    const ScanReport b = scan(s, ConditioningFamily::bounded_grid(6), 6, 30);
    CHECK(a.max_abs_cor == b.max_abs_cor);
    CHECK(a.skipped == b.skipped);
    REQUIRE(a.has_argmax == b.has_argmax);
    CHECK(a.argmax.key == b.argmax.key);
    CHECK(a.argmax.cor == b.argmax.cor);
}

TEST_CASE("argmax tie-break picks the lexicographically smallest rectangle") {
    // two mirrored clusters produce |cor| = 1 in several rectangles
    PairedSample s;
    for (int i = 0; i < 40; ++i) {
        s.x.push_back(i % 4);
        s.y.push_back(i % 4);
    }
    for (int i = 0; i < 40; ++i) {
        s.x.push_back(10 + i % 4);
        s.y.push_back(13 - (i % 4));
    }
    const ScanReport rep = scan(s, ConditioningFamily::bounded_grid(4), 4, 10);
    REQUIRE(rep.has_argmax);
    CHECK(rep.max_abs_cor == doctest::Approx(1.0));
    // re-running yields the identical argmax key
    const ScanReport rep2 = scan(s, ConditioningFamily::bounded_grid(4), 4, 10);
    CHECK(rep.argmax.key == rep2.argmax.key);
}

TEST_CASE("local scan on discrete x reports exact zero everywhere") {
    const PairedSample s = gen_mixed(4000, 5);
    const ScanReport rep = scan_local(s, 0.4, 0.2, 30);
    CHECK(rep.max_abs_cor == 0.0);
    for (const RectRecord& rec : rep.records) {
        if (!rec.skipped) CHECK(rec.cor == 0.0);
    }
    CHECK(rep.total_rects == rep.records.size());
    CHECK(rep.skipped < rep.total_rects);
}

TEST_CASE("hidden blocks look independent locally but dependent globally") {
    const PairedSample s = gen_hidden_blocks(20000, 99);

    const CondMoments global = conditional_moments(s, Rectangle::full(2));
    CHECK(conditional_correlation(global) == doctest::Approx(4.0 / 13.0).epsilon(0.05));

    const ScanReport local = scan_local(s, 0.5, 0.25, 30);
    CHECK(local.max_abs_cor < 0.15);

    const ScanReport bounded = scan(s, ConditioningFamily::bounded_grid(8), 8, 30);
    CHECK(bounded.max_abs_cor > 0.25);
}

TEST_CASE("local windows cover every point") {
    const PairedSample s = gen_indep_uniform(500, 8);
    const ScanReport rep = scan_local(s, 0.3, 0.15, 2);
    // every observation appears in at least one window: the per-window
    // counts must sum to >= n (overlap makes it larger)
    std::int64_t total_m = 0;
    for (const RectRecord& rec : rep.records) total_m += rec.m;
    CHECK(total_m >= static_cast<std::int64_t>(s.size()));

    // spot-check: each point is inside its own window rectangle
    std::size_t covered = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (const RectRecord& rec : rep.records) {
            if (rec.rect.contains2(s.x[i], s.y[i])) {
                ++covered;
                break;
            }
        }
    }
    CHECK(covered == s.size());
}

TEST_CASE("local family via the generic scan entry point") {
    const PairedSample s = gen_indep_uniform(1000, 12);
    const ScanReport a = scan(s, ConditioningFamily::local_windows(0.3), 0, 30);
    const ScanReport b = scan_local(s, 0.3, 0.15, 30);
    CHECK(a.max_abs_cor == b.max_abs_cor);
    CHECK(a.total_rects == b.total_rects);
}
