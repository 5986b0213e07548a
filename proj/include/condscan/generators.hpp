#pragma once

// Seeded samplers for the distributions the test and acceptance suites
// exercise, plus the CLI `generate` subcommand.

#include "condscan/sample.hpp"

#include <cstdint>
#include <vector>

namespace condscan {

/// X standard normal, Z a fair independent sign, Y = Z * X. Globally
/// uncorrelated but supported on |x| = |y|.
PairedSample gen_sign_flip(std::size_t n, std::uint64_t seed);

/// Mixture p * U[0,1] + (1-p) * U[2,3]; p in (0,1). Means truncated to
/// windows inside either block do not depend on p.
std::vector<double> gen_mixture_fp(std::size_t n, double p, std::uint64_t seed);

/// Discrete X on {0,1,2} with a continuous Y built so that cov(X, Y) is
/// exactly zero while the lower tail of Y depends on X.
///
/// Construction: Y = 15.9 - 0.025 X + e. With probability 1/4 the noise
/// is a drop, e = -(2 + X) + U(-0.3, 0.3); otherwise the bulk,
/// e = 19/30 + (11/30) X + U(-0.3, 0.3). Then E[e | X] = 0.025 (X - 1),
/// so E[Y | X] = 15.875 for every X and the global covariance vanishes,
/// while dropped points fall with slope -(1 + 0.025) in X, which makes
/// the conditional correlation on the lower tail of Y negative.
PairedSample gen_mixed(std::size_t n, std::uint64_t seed);

/// X = X1 + 2 Z1, Y = X2 + 2 Z2 with (X1, X2) uniform on the unit
/// square and (Z1, Z2) on {0,1}^2 with P(0,0) = P(1,1) = 1/3,
/// P(0,1) = P(1,0) = 1/6, everything independent. Global correlation is
/// 4/13 yet the pair is independent inside every block.
PairedSample gen_hidden_blocks(std::size_t n, std::uint64_t seed);

/// X, Y independent uniform on {-1, +1}, Z = X * Y: pairwise
/// uncorrelated, mutually dependent.
MultiSample gen_xor_cube(std::size_t n, std::uint64_t seed);

PairedSample gen_indep_gauss(std::size_t n, std::uint64_t seed);
PairedSample gen_indep_uniform(std::size_t n, std::uint64_t seed);

/// d independent standard normal columns.
MultiSample gen_indep_gauss_multi(std::size_t n, std::size_t d, std::uint64_t seed);

} // namespace condscan
