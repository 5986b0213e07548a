#pragma once

#include <cstddef>
#include <vector>

namespace condscan {

/// Two aligned columns of observations. Analysis entry points call
/// validate_sample; generators may produce shorter samples (n >= 1) that
/// are only ever written out, not scanned.
struct PairedSample {
    std::vector<double> x;
    std::vector<double> y;

    std::size_t size() const { return x.size(); }
};

/// d aligned columns, d >= 2.
struct MultiSample {
    std::vector<std::vector<double>> columns;

    std::size_t dim() const { return columns.size(); }
    std::size_t size() const { return columns.empty() ? 0 : columns.front().size(); }
};

/// Throws std::invalid_argument on length mismatch, n < 2 or non-finite
/// values.
void validate_sample(const PairedSample& s);
void validate_sample(const MultiSample& s);

} // namespace condscan
