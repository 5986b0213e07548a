#include "condscan/moments.hpp"

#include "condscan/dd.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace condscan {

namespace {

double raw_variance(double sq_sum, double lin_sum, std::int64_t m) {
    const double n = static_cast<double>(m);
    const double mean = lin_sum / n;
    return sq_sum / n - mean * mean;
}

double checked_variance(double sq_sum, double lin_sum, std::int64_t m) {
    const double n = static_cast<double>(m);
    const double raw = raw_variance(sq_sum, lin_sum, m);
    const double scale = std::max(std::fabs(sq_sum / n), 1e-300);
    if (raw < -1e-9 * scale) {
        throw std::logic_error("negative variance beyond tolerance; accumulation is broken");
    }
    return std::max(raw, 0.0);
}

bool degenerate(double sq_sum, double lin_sum, std::int64_t m) {
    if (m < 2) return true;
    const double n = static_cast<double>(m);
    const double raw = raw_variance(sq_sum, lin_sum, m);
    return !(raw > kVarRelTol * std::max(sq_sum / n, 1e-300));
}

} // namespace

double CondMoments::var_x() const { return checked_variance(sxx, sx, m); }
double CondMoments::var_y() const { return checked_variance(syy, sy, m); }
bool CondMoments::degenerate_x() const { return degenerate(sxx, sx, m); }
bool CondMoments::degenerate_y() const { return degenerate(syy, sy, m); }

CondMoments from_sums(const MomentSums& s) {
    CondMoments out;
    out.m = s.m;
    out.sx = s.sx;
    out.sy = s.sy;
    out.sxy = s.sxy;
    out.sxx = s.sxx;
    out.syy = s.syy;
    return out;
}

std::vector<std::size_t> select_indices(const PairedSample& sample, const Rectangle& rect) {
    if (rect.dim() != 2) {
        throw std::invalid_argument("select_indices requires a 2-dimensional rectangle");
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (rect.contains2(sample.x[i], sample.y[i])) out.push_back(i);
    }
    return out;
}

CondMoments conditional_moments(const PairedSample& sample, const Rectangle& rect) {
    if (rect.dim() != 2) {
        throw std::invalid_argument("conditional_moments requires a 2-dimensional rectangle");
    }
    validate_sample(sample);
    const Interval& a = rect.axis(0);
    const Interval& b = rect.axis(1);
    const MomentSums s = moment_kernel()(sample.x.data(), sample.y.data(), sample.size(),
                                         a.lo(), a.hi(), b.lo(), b.hi());
    return from_sums(s);
}

std::optional<double> conditional_covariance(const CondMoments& mom) {
    if (mom.m < 2) return std::nullopt;
    const double n = static_cast<double>(mom.m);
    return mom.sxy / n - (mom.sx / n) * (mom.sy / n);
}

double conditional_correlation(const CondMoments& mom) {
    if (mom.m < 2) return 0.0;
    if (mom.degenerate_x() || mom.degenerate_y()) return 0.0;
    const double n = static_cast<double>(mom.m);
    const double cov = mom.sxy / n - (mom.sx / n) * (mom.sy / n);
    const double c = cov / (std::sqrt(mom.var_x()) * std::sqrt(mom.var_y()));
    return std::clamp(c, -1.0, 1.0);
}

std::optional<double> truncated_mean(std::span<const double> values, const Interval& interval) {
    CompensatedSum sum;
    std::int64_t m = 0;
    for (double v : values) {
        if (interval.contains(v)) {
            sum.add(v);
            ++m;
        }
    }
    if (m == 0) return std::nullopt;
    return sum.value() / static_cast<double>(m);
}

std::string Interval::describe() const {
    std::ostringstream os;
    os.precision(12);
    switch (kind_) {
        case Kind::bounded: os << "[" << lo_ << ", " << hi_ << "]"; break;
        case Kind::upper_tail: os << "[" << lo_ << ", inf)"; break;
        case Kind::full: os << "(-inf, inf)"; break;
    }
    return os.str();
}

std::string Rectangle::describe() const {
    std::string out;
    for (std::size_t i = 0; i < axes_.size(); ++i) {
        if (i > 0) out += " x ";
        out += axes_[i].describe();
    }
    return out;
}

void validate_sample(const PairedSample& s) {
    if (s.x.size() != s.y.size()) {
        throw std::invalid_argument("paired sample columns differ in length");
    }
    if (s.size() < 2) {
        throw std::invalid_argument("paired sample needs at least 2 observations");
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
            throw std::invalid_argument("paired sample contains a non-finite value");
        }
    }
}

void validate_sample(const MultiSample& s) {
    if (s.dim() < 2) {
        throw std::invalid_argument("multi sample needs at least 2 columns");
    }
    const std::size_t n = s.columns.front().size();
    if (n < 2) {
        throw std::invalid_argument("multi sample needs at least 2 observations");
    }
    for (const auto& col : s.columns) {
        if (col.size() != n) {
            throw std::invalid_argument("multi sample columns differ in length");
        }
        for (double v : col) {
            if (!std::isfinite(v)) {
                throw std::invalid_argument("multi sample contains a non-finite value");
            }
        }
    }
}

} // namespace condscan
