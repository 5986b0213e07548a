#include "condscan/discrete.hpp"

#include "condscan/dd.hpp"
#include "condscan/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace condscan {

double exact_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end(),
              [](double a, double b) { return std::fabs(a) < std::fabs(b); });
    CompensatedSum s;
    for (double t : terms) s.add(t);
    return s.value();
}

void validate_joint(const DiscreteJoint& joint) {
    if (joint.atoms.empty()) throw std::invalid_argument("joint has no atoms");
    const std::size_t d = joint.dim();
    if (d == 0) throw std::invalid_argument("joint atoms have no coordinates");
    std::vector<double> masses;
    masses.reserve(joint.atoms.size());
    for (const Atom& a : joint.atoms) {
        if (a.coords.size() != d) throw std::invalid_argument("joint atom dimension mismatch");
        if (!(a.p > 0.0)) throw std::invalid_argument("joint atom mass must be positive");
        for (double c : a.coords) {
            if (!std::isfinite(c)) throw std::invalid_argument("joint atom coordinate not finite");
        }
        masses.push_back(a.p);
    }
    if (std::fabs(exact_sum(std::move(masses)) - 1.0) > 1e-12) {
        throw std::invalid_argument("joint masses must sum to 1 within 1e-12");
    }
}

namespace {

std::vector<double> distinct_coords(const DiscreteJoint& joint, std::size_t axis) {
    std::vector<double> v;
    v.reserve(joint.atoms.size());
    for (const Atom& a : joint.atoms) v.push_back(a.coords[axis]);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

struct RectSums {
    double mass, sx, sy, sxy, sxx, syy;
};

RectSums weighted_sums(const DiscreteJoint& joint, double xlo, double xhi, double ylo,
                       double yhi) {
    std::vector<double> tm, tx, ty, txy, txx, tyy;
    for (const Atom& a : joint.atoms) {
        const double x = a.coords[0];
        const double y = a.coords[1];
        if (x < xlo || x > xhi || y < ylo || y > yhi) continue;
        tm.push_back(a.p);
        tx.push_back(a.p * x);
        ty.push_back(a.p * y);
        txy.push_back(a.p * x * y);
        txx.push_back(a.p * x * x);
        tyy.push_back(a.p * y * y);
    }
    return {exact_sum(std::move(tm)),  exact_sum(std::move(tx)),  exact_sum(std::move(ty)),
            exact_sum(std::move(txy)), exact_sum(std::move(txx)), exact_sum(std::move(tyy))};
}

OracleMoments moments_from_sums(const RectSums& s) {
    OracleMoments out;
    out.mass = s.mass;
    out.mean_x = s.sx / s.mass;
    out.mean_y = s.sy / s.mass;
    out.cov = s.sxy / s.mass - out.mean_x * out.mean_y;
    const double ex2 = s.sxx / s.mass;
    const double ey2 = s.syy / s.mass;
    const double vx = ex2 - out.mean_x * out.mean_x;
    const double vy = ey2 - out.mean_y * out.mean_y;
    const bool deg_x = !(vx > kVarRelTol * std::max(ex2, 1e-300));
    const bool deg_y = !(vy > kVarRelTol * std::max(ey2, 1e-300));
    if (deg_x || deg_y) {
        out.cor = 0.0;
    } else {
        out.cor = std::clamp(out.cov / (std::sqrt(vx) * std::sqrt(vy)), -1.0, 1.0);
    }
    return out;
}

} // namespace

OracleMoments oracle_cond_moments(const DiscreteJoint& joint, const Rectangle& rect) {
    validate_joint(joint);
    if (joint.dim() != 2 || rect.dim() != 2) {
        throw std::invalid_argument("oracle_cond_moments expects a 2-dimensional joint and rectangle");
    }
    const RectSums s = weighted_sums(joint, rect.axis(0).lo(), rect.axis(0).hi(),
                                     rect.axis(1).lo(), rect.axis(1).hi());
    if (!(s.mass > 0.0)) {
        throw std::invalid_argument("oracle_cond_moments: rectangle has zero probability mass");
    }
    return moments_from_sums(s);
}

bool oracle_is_independent(const DiscreteJoint& joint, double tol) {
    validate_joint(joint);
    const std::size_t d = joint.dim();

    // Marginal mass per distinct coordinate, per axis.
    std::vector<std::vector<double>> coords(d);
    std::vector<std::vector<double>> marg(d);
    for (std::size_t a = 0; a < d; ++a) {
        coords[a] = distinct_coords(joint, a);
        marg[a].resize(coords[a].size());
        for (std::size_t i = 0; i < coords[a].size(); ++i) {
            std::vector<double> terms;
            for (const Atom& at : joint.atoms) {
                if (at.coords[a] == coords[a][i]) terms.push_back(at.p);
            }
            marg[a][i] = exact_sum(std::move(terms));
        }
    }

    // Walk the full product lattice; absent combinations carry mass 0.
    std::vector<std::size_t> idx(d, 0);
    for (;;) {
        double prod = 1.0;
        for (std::size_t a = 0; a < d; ++a) prod *= marg[a][idx[a]];
        double mass = 0.0;
        for (const Atom& at : joint.atoms) {
            bool match = true;
            for (std::size_t a = 0; a < d && match; ++a) {
                match = at.coords[a] == coords[a][idx[a]];
            }
            if (match) {
                mass = at.p;
                break;
            }
        }
        if (std::fabs(mass - prod) > tol) return false;

        std::size_t a = 0;
        while (a < d && ++idx[a] == coords[a].size()) {
            idx[a] = 0;
            ++a;
        }
        if (a == d) break;
    }
    return true;
}

DiscreteJoint project_pair(const DiscreteJoint& joint, std::size_t axis_i, std::size_t axis_j) {
    validate_joint(joint);
    std::vector<std::pair<std::pair<double, double>, double>> items;
    items.reserve(joint.atoms.size());
    for (const Atom& a : joint.atoms) {
        items.push_back({{a.coords.at(axis_i), a.coords.at(axis_j)}, a.p});
    }
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    DiscreteJoint out;
    std::size_t i = 0;
    while (i < items.size()) {
        std::size_t j = i;
        std::vector<double> terms;
        while (j < items.size() && items[j].first == items[i].first) {
            terms.push_back(items[j].second);
            ++j;
        }
        out.atoms.push_back(Atom{{items[i].first.first, items[i].first.second},
                                 exact_sum(std::move(terms))});
        i = j;
    }
    return out;
}

bool all_atom_rects_uncorrelated(const DiscreteJoint& joint, double tol) {
    validate_joint(joint);
    if (joint.dim() != 2) {
        throw std::invalid_argument("all_atom_rects_uncorrelated expects a 2-dimensional joint");
    }
    const std::vector<double> xs = distinct_coords(joint, 0);
    const std::vector<double> ys = distinct_coords(joint, 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            for (std::size_t k = 0; k < ys.size(); ++k) {
                for (std::size_t l = k + 1; l < ys.size(); ++l) {
                    const RectSums s = weighted_sums(joint, xs[i], xs[j], ys[k], ys[l]);
                    if (!(s.mass > 0.0)) continue;
                    const OracleMoments m = moments_from_sums(s);
                    if (std::fabs(m.cov) > tol) return false;
                }
            }
        }
    }
    return true;
}

namespace {

std::vector<double> random_support(Rng& rng, int size) {
    // distinct integers from 0..9, sorted; exactly representable with
    // coordinate gaps >= 1
    std::vector<double> pool;
    for (int v = 0; v < 10; ++v) pool.push_back(static_cast<double>(v));
    rng.shuffle(std::span<double>(pool));
    std::vector<double> out(pool.begin(), pool.begin() + size);
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<double> random_probs(Rng& rng, int size) {
    std::vector<double> w(size);
    double total = 0.0;
    for (double& v : w) {
        v = static_cast<double>(1 + rng.next_below(10));
        total += v;
    }
    for (double& v : w) v /= total;
    return w;
}

} // namespace

DiscreteJoint random_product_joint(Rng& rng, int max_support) {
    const int nx = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_support)));
    const int ny = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_support)));
    const std::vector<double> xs = random_support(rng, nx);
    const std::vector<double> ys = random_support(rng, ny);
    const std::vector<double> px = random_probs(rng, nx);
    const std::vector<double> py = random_probs(rng, ny);
    DiscreteJoint joint;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            joint.atoms.push_back(Atom{{xs[i], ys[j]}, px[i] * py[j]});
        }
    }
    return joint;
}

DiscreteJoint random_dependent_joint(Rng& rng, int max_support) {
    const int nx = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_support - 1)));
    const int ny = 2 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_support - 1)));
    const std::vector<double> xs = random_support(rng, nx);
    const std::vector<double> ys = random_support(rng, ny);
    const std::vector<double> px = random_probs(rng, nx);
    const std::vector<double> py = random_probs(rng, ny);
    std::vector<std::vector<double>> mass(nx, std::vector<double>(ny));
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) mass[i][j] = px[i] * py[j];
    }
    // Tilt two rows and two columns; marginals stay fixed while the
    // joint leaves the product by delta at four cells.
    const int r1 = static_cast<int>(rng.next_below(nx - 1));
    const int r2 = r1 + 1 + static_cast<int>(rng.next_below(nx - r1 - 1));
    const int c1 = static_cast<int>(rng.next_below(ny - 1));
    const int c2 = c1 + 1 + static_cast<int>(rng.next_below(ny - c1 - 1));
    const double delta = 0.25 * std::min(mass[r1][c1], mass[r2][c2]);
    mass[r1][c1] -= delta;
    mass[r2][c2] -= delta;
    mass[r1][c2] += delta;
    mass[r2][c1] += delta;
    DiscreteJoint joint;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            joint.atoms.push_back(Atom{{xs[i], ys[j]}, mass[i][j]});
        }
    }
    return joint;
}

} // namespace condscan
