#pragma once

#include <string>
#include <vector>

namespace condscan {

/// Ordinary least squares with an intercept, solved through the normal
/// equations (Cholesky on X'X). Residuals are exactly orthogonal to the
/// fitted values up to solver rounding.
struct OlsFit {
    std::vector<double> coef; // intercept first, then one per predictor
    std::vector<double> fitted;
    std::vector<double> resid;
};

/// Throws std::invalid_argument naming the collinear column when X'X is
/// rank deficient (relative pivot tolerance 1e-10).
OlsFit ols_fit(const std::vector<std::vector<double>>& predictors,
               const std::vector<double>& response,
               const std::vector<std::string>& predictor_names);

} // namespace condscan
