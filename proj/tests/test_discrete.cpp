#include <doctest.h>

#include "condscan/discrete.hpp"
#include "condscan/rng.hpp"

#include <cmath>

using namespace condscan;

namespace {

DiscreteJoint two_by_two(double p00, double p01, double p10, double p11) {
    DiscreteJoint j;
    j.atoms = {Atom{{0.0, 0.0}, p00}, Atom{{0.0, 1.0}, p01}, Atom{{1.0, 0.0}, p10},
               Atom{{1.0, 1.0}, p11}};
    return j;
}

Rectangle box(double xlo, double xhi, double ylo, double yhi) {
    return Rectangle::box2(Interval::bounded(xlo, xhi), Interval::bounded(ylo, yhi));
}

} // namespace

TEST_CASE("joint validation") {
    DiscreteJoint bad = two_by_two(0.25, 0.25, 0.25, 0.2);
    CHECK_THROWS_AS(validate_joint(bad), std::invalid_argument);
    DiscreteJoint neg = two_by_two(0.5, 0.5, 0.25, -0.25);
    CHECK_THROWS_AS(validate_joint(neg), std::invalid_argument);
    CHECK_NOTHROW(validate_joint(two_by_two(0.25, 0.25, 0.25, 0.25)));
}

TEST_CASE("product joint: zero covariance on every rectangle") {
    // independent marginals (0.3, 0.7) x (0.6, 0.4)
    const DiscreteJoint j = two_by_two(0.18, 0.12, 0.42, 0.28);
    CHECK(oracle_is_independent(j));
    CHECK(all_atom_rects_uncorrelated(j));
    const OracleMoments m = oracle_cond_moments(j, box(0, 1, 0, 1));
    CHECK(m.mass == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(m.cov) < 1e-14);
}

TEST_CASE("dependent 2x2 joint: global covariance 0.15") {
    const DiscreteJoint j = two_by_two(0.4, 0.1, 0.1, 0.4);
    CHECK_FALSE(oracle_is_independent(j));
    const OracleMoments m = oracle_cond_moments(j, box(0, 1, 0, 1));
    CHECK(m.cov == doctest::Approx(0.15).epsilon(1e-13));
    CHECK_FALSE(all_atom_rects_uncorrelated(j));
}

TEST_CASE("two-point supports: global covariance alone decides independence") {
    Rng rng(12);
    for (int t = 0; t < 200; ++t) {
        double w[4];
        double total = 0.0;
        for (double& v : w) {
            v = 1.0 + static_cast<double>(rng.next_below(20));
            total += v;
        }
        const DiscreteJoint j = two_by_two(w[0] / total, w[1] / total, w[2] / total,
                                           w[3] / total);
        const OracleMoments m = oracle_cond_moments(j, box(0, 1, 0, 1));
        CHECK(oracle_is_independent(j, 1e-9) == (std::fabs(m.cov) <= 1e-9));
    }
}

TEST_CASE("single-atom rectangle: delta convention") {
    const DiscreteJoint j = two_by_two(0.4, 0.1, 0.1, 0.4);
    const OracleMoments m = oracle_cond_moments(j, box(-0.5, 0.5, -0.5, 0.5));
    CHECK(m.mass == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(m.cov == 0.0);
    CHECK(m.cor == 0.0);
}

TEST_CASE("zero-mass rectangle is rejected") {
    const DiscreteJoint j = two_by_two(0.25, 0.25, 0.25, 0.25);
    CHECK_THROWS_AS(oracle_cond_moments(j, box(5, 6, 5, 6)), std::invalid_argument);
}

TEST_CASE("xor joint: pairwise projections independent, the triple is not") {
    DiscreteJoint xor3;
    xor3.atoms = {Atom{{1, 1, 1}, 0.25}, Atom{{1, -1, -1}, 0.25}, Atom{{-1, 1, -1}, 0.25},
                  Atom{{-1, -1, 1}, 0.25}};
    CHECK_FALSE(oracle_is_independent(xor3));
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = a + 1; b < 3; ++b) {
            const DiscreteJoint pair = project_pair(xor3, a, b);
            CHECK(oracle_is_independent(pair));
            CHECK(all_atom_rects_uncorrelated(pair));
        }
    }
}

TEST_CASE("independence coincides with all-rectangle uncorrelation on random joints") {
    Rng rng(20260810);
    int checked = 0;
    for (int t = 0; t < 300; ++t) {
        const bool indep = (t % 2) == 0;
        const DiscreteJoint j =
            indep ? random_product_joint(rng, 4) : random_dependent_joint(rng, 4);
        CHECK(oracle_is_independent(j) == indep);
        CHECK(all_atom_rects_uncorrelated(j) == indep);
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("exact_sum handles cancellation") {
    std::vector<double> terms;
    for (int i = 0; i < 1000; ++i) {
        terms.push_back(1e15);
        terms.push_back(-1e15);
        terms.push_back(1.0 / 3.0);
    }
    CHECK(exact_sum(terms) == doctest::Approx(1000.0 / 3.0).epsilon(1e-13));
}
