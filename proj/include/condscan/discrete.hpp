#pragma once

// Finite-atom joint distributions with exact conditional moments by
// enumeration: the ground truth the sampling engines are checked
// against.

#include "condscan/interval.hpp"
#include "condscan/rng.hpp"

#include <cstdint>
#include <vector>

namespace condscan {

struct Atom {
    std::vector<double> coords;
    double p = 0.0;
};

struct DiscreteJoint {
    std::vector<Atom> atoms;

    std::size_t dim() const { return atoms.empty() ? 0 : atoms.front().coords.size(); }
};

/// Throws unless probabilities are positive, consistent in dimension and
/// sum to 1 within 1e-12.
void validate_joint(const DiscreteJoint& joint);

/// Exact conditional moments of a two-dimensional joint on a rectangle.
struct OracleMoments {
    double mass = 0.0;
    double mean_x = 0.0;
    double mean_y = 0.0;
    double cov = 0.0;
    double cor = 0.0; // Kronecker-delta convention when a side is degenerate
};

/// Rejects rectangles of zero probability mass.
OracleMoments oracle_cond_moments(const DiscreteJoint& joint, const Rectangle& rect);

/// Mutual independence: every atom mass equals the product of its
/// marginal masses within tol.
bool oracle_is_independent(const DiscreteJoint& joint, double tol = 1e-12);

/// Two-dimensional marginal of axes (i, j).
DiscreteJoint project_pair(const DiscreteJoint& joint, std::size_t axis_i, std::size_t axis_j);

/// True when every rectangle with endpoints on atom coordinates has
/// |conditional covariance| <= tol. Finitely many rectangles suffice on
/// finite support: moments are constant between consecutive atoms.
bool all_atom_rects_uncorrelated(const DiscreteJoint& joint, double tol = 1e-12);

/// Exact sum: sorts by ascending magnitude, then compensated
/// accumulation.
double exact_sum(std::vector<double> terms);

/// Product of random marginals on small integer-coordinate supports.
DiscreteJoint random_product_joint(Rng& rng, int max_support);

/// Product joint with a mass tilt between two rows and two columns:
/// marginals are preserved while the joint moves off the product by a
/// fixed margin, so dependence is never borderline.
DiscreteJoint random_dependent_joint(Rng& rng, int max_support);

} // namespace condscan
