#include <doctest.h>

#include "condscan/inference.hpp"
#include "condscan/moments.hpp"
#include "condscan/ols.hpp"
#include "condscan/rng.hpp"
#include "condscan/scan.hpp"

#include <cmath>
#include <vector>

using namespace condscan;

TEST_CASE("recovers exact linear coefficients on noise-free data") {
    Rng rng(1);
    const std::size_t n = 500;
    std::vector<double> a(n), b(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.next_double();
        b[i] = rng.next_normal();
        y[i] = 2.0 - 3.0 * a[i] + 0.5 * b[i];
    }
    const OlsFit fit = ols_fit({a, b}, y, {"a", "b"});
    CHECK(fit.coef[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.coef[1] == doctest::Approx(-3.0).epsilon(1e-9));
    CHECK(fit.coef[2] == doctest::Approx(0.5).epsilon(1e-9));
    for (double r : fit.resid) CHECK(std::fabs(r) < 1e-9);
}

TEST_CASE("residuals are orthogonal to fitted values") {
    Rng rng(2);
    const std::size_t n = 2000;
    std::vector<double> a(n), b(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.next_double();
        b[i] = rng.next_double();
        y[i] = 1.0 + a[i] - 2.0 * b[i] + 0.5 * rng.next_normal();
    }
    const OlsFit fit = ols_fit({a, b}, y, {"a", "b"});
    const CondMoments m =
        conditional_moments(PairedSample{fit.fitted, fit.resid}, Rectangle::full(2));
    CHECK(std::fabs(conditional_correlation(m)) < 1e-8);
}

TEST_CASE("collinear columns are named in the error") {
    Rng rng(3);
    const std::size_t n = 100;
    std::vector<double> a(n), twice(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        a[i] = rng.next_double();
        twice[i] = 2.0 * a[i];
        y[i] = a[i] + rng.next_normal();
    }
    CHECK_THROWS_WITH_AS(
        ols_fit({a, twice}, y, {"a", "twice_a"}),
        "design is rank deficient: column 'twice_a' is collinear with earlier columns",
        std::invalid_argument);

    // constant predictor duplicates the intercept
    std::vector<double> ones(n, 1.0);
    CHECK_THROWS_AS(ols_fit({ones, a}, y, {"ones", "a"}), std::invalid_argument);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(ols_fit({}, {1, 2}, {}), std::invalid_argument);
    CHECK_THROWS_AS(ols_fit({{1, 2}}, {1, 2, 3}, {"a"}), std::invalid_argument);
    CHECK_THROWS_AS(ols_fit({{1, 2}}, {1, 2}, {"a", "b"}), std::invalid_argument);
}

TEST_CASE("residual diagnostics: tail-dependent noise shows up in the lower tail") {
    // Linear fit of a model with a mild quadratic twist plus noise that
    // grows and skews negative for small x1: the fitted-vs-residual pair
    // is globally uncorrelated by construction but bends in the left
    // tail of the fitted values.
    Rng rng(2026);
    const std::size_t n = 4000;
    std::vector<double> x1(n), x2(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        x1[i] = rng.next_double();
        x2[i] = rng.next_double();
        const double hetero = 0.1 + 0.8 * std::max(0.0, 0.3 - x1[i]);
        y[i] = 1.0 + 2.0 * x1[i] - x2[i] + 0.8 * (x1[i] - 0.5) * (x1[i] - 0.5) +
               hetero * rng.next_normal();
    }
    const OlsFit fit = ols_fit({x1, x2}, y, {"x1", "x2"});

    const PairedSample pairs{fit.fitted, fit.resid};
    const double global =
        conditional_correlation(conditional_moments(pairs, Rectangle::full(2)));
    CHECK(std::fabs(global) < 1e-8);

    // lower tails of the fitted values via the negated axis
    PairedSample flipped = pairs;
    for (double& v : flipped.x) v = -v;
    ScanConfig cfg;
    cfg.mode = ScanConfig::Mode::tails;
    cfg.levels = 5; // tail starts include the 0.2 quantile
    cfg.m_min = 30;
    const PermutationTestResult r = permutation_test(flipped, cfg, 99, 2026);
    CHECK(r.observed_stat > r.null_quantile(0.95));
    CHECK(r.p_value <= 0.05);
}
