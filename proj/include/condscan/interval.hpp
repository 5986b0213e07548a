#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace condscan {

/// Closed interval on the real line: [lo, hi], [t, +inf) or the whole
/// line. Membership is closed on every finite endpoint.
class Interval {
public:
    enum class Kind { bounded, upper_tail, full };

    static Interval bounded(double lo, double hi) {
        if (!(lo < hi)) {
            throw std::invalid_argument("Interval::bounded requires lo < hi");
        }
        return Interval(Kind::bounded, lo, hi);
    }

    static Interval upper_tail(double t) {
        return Interval(Kind::upper_tail, t, std::numeric_limits<double>::infinity());
    }

    static Interval full() {
        return Interval(Kind::full, -std::numeric_limits<double>::infinity(),
                        std::numeric_limits<double>::infinity());
    }

    Kind kind() const { return kind_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    bool contains(double v) const { return v >= lo_ && v <= hi_; }

    std::string describe() const;

private:
    Interval(Kind k, double lo, double hi) : kind_(k), lo_(lo), hi_(hi) {}

    Kind kind_;
    double lo_;
    double hi_;
};

/// Product of per-axis intervals; dimension >= 1. For two dimensions the
/// first axis is x, the second y.
class Rectangle {
public:
    explicit Rectangle(std::vector<Interval> axes) : axes_(std::move(axes)) {
        if (axes_.empty()) {
            throw std::invalid_argument("Rectangle requires dimension >= 1");
        }
    }

    static Rectangle box2(Interval a, Interval b) {
        return Rectangle(std::vector<Interval>{a, b});
    }

    static Rectangle full(std::size_t dim) {
        return Rectangle(std::vector<Interval>(dim, Interval::full()));
    }

    std::size_t dim() const { return axes_.size(); }
    const Interval& axis(std::size_t i) const { return axes_.at(i); }
    const std::vector<Interval>& axes() const { return axes_; }

    bool contains2(double x, double y) const {
        return axes_[0].contains(x) && axes_[1].contains(y);
    }

    std::string describe() const;

private:
    std::vector<Interval> axes_;
};

} // namespace condscan
