#include "condscan/generators.hpp"

#include "condscan/rng.hpp"

#include <stdexcept>

namespace condscan {

namespace {
void require_n(std::size_t n) {
    if (n < 1) throw std::invalid_argument("generator requires n >= 1");
}
} // namespace

PairedSample gen_sign_flip(std::size_t n, std::uint64_t seed) {
    require_n(n);
    Rng rng(seed);
    PairedSample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        const double z = (rng.next_u64() & 1u) ? 1.0 : -1.0;
        s.x[i] = x;
        s.y[i] = z * x;
    }
    return s;
}

std::vector<double> gen_mixture_fp(std::size_t n, double p, std::uint64_t seed) {
    require_n(n);
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("gen_mixture_fp requires p in (0,1)");
    Rng rng(seed);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool low = rng.next_double() < p;
        v[i] = low ? rng.next_double() : 2.0 + rng.next_double();
    }
    return v;
}

PairedSample gen_mixed(std::size_t n, std::uint64_t seed) {
    require_n(n);
    Rng rng(seed);
    PairedSample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = static_cast<double>(rng.next_below(3));
        const bool drop = rng.next_double() < 0.25;
        const double u = rng.next_uniform(-0.3, 0.3);
        const double e = drop ? -(2.0 + x) + u : (19.0 / 30.0) + (11.0 / 30.0) * x + u;
        s.x[i] = x;
        s.y[i] = 15.9 - 0.025 * x + e;
    }
    return s;
}

PairedSample gen_hidden_blocks(std::size_t n, std::uint64_t seed) {
    require_n(n);
    Rng rng(seed);
    PairedSample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = rng.next_double();
        double z1, z2;
        if (u < 1.0 / 3.0) {
            z1 = 0.0; z2 = 0.0;
        } else if (u < 2.0 / 3.0) {
            z1 = 1.0; z2 = 1.0;
        } else if (u < 5.0 / 6.0) {
            z1 = 0.0; z2 = 1.0;
        } else {
            z1 = 1.0; z2 = 0.0;
        }
        s.x[i] = rng.next_double() + 2.0 * z1;
        s.y[i] = rng.next_double() + 2.0 * z2;
    }
    return s;
}

MultiSample gen_xor_cube(std::size_t n, std::uint64_t seed) {
    require_n(n);
    Rng rng(seed);
    MultiSample s;
    s.columns.assign(3, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (rng.next_u64() & 1u) ? 1.0 : -1.0;
        const double y = (rng.next_u64() & 1u) ? 1.0 : -1.0;
        s.columns[0][i] = x;
        s.columns[1][i] = y;
        s.columns[2][i] = x * y;
    }
    return s;
}

PairedSample gen_indep_gauss(std::size_t n, std::uint64_t seed) {
    require_n(n);
    Rng rng(seed);
    PairedSample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.x[i] = rng.next_normal();
        s.y[i] = rng.next_normal();
    }
    return s;
}

PairedSample gen_indep_uniform(std::size_t n, std::uint64_t seed) {
    require_n(n);
    Rng rng(seed);
    PairedSample s;
    s.x.resize(n);
    s.y.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        s.x[i] = rng.next_double();
        s.y[i] = rng.next_double();
    }
    return s;
}

MultiSample gen_indep_gauss_multi(std::size_t n, std::size_t d, std::uint64_t seed) {
    require_n(n);
    if (d < 2) throw std::invalid_argument("gen_indep_gauss_multi requires d >= 2");
    Rng rng(seed);
    MultiSample s;
    s.columns.assign(d, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < d; ++c) s.columns[c][i] = rng.next_normal();
    }
    return s;
}

} // namespace condscan
