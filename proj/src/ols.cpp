#include "condscan/ols.hpp"

#include "condscan/dd.hpp"

#include <cmath>
#include <stdexcept>

namespace condscan {

OlsFit ols_fit(const std::vector<std::vector<double>>& predictors,
               const std::vector<double>& response,
               const std::vector<std::string>& predictor_names) {
    const std::size_t n = response.size();
    const std::size_t p = predictors.size();
    if (p == 0) throw std::invalid_argument("ols_fit needs at least one predictor");
    if (predictor_names.size() != p) {
        throw std::invalid_argument("ols_fit: one name per predictor required");
    }
    for (const auto& col : predictors) {
        if (col.size() != n) throw std::invalid_argument("ols_fit: column length mismatch");
    }
    const std::size_t q = p + 1; // intercept + predictors
    if (n < q) throw std::invalid_argument("ols_fit: more coefficients than observations");

    auto design = [&](std::size_t j, std::size_t row) {
        return j == 0 ? 1.0 : predictors[j - 1][row];
    };

    // X'X and X'y with compensated sums.
    std::vector<double> xtx(q * q, 0.0), xty(q, 0.0);
    for (std::size_t i = 0; i < q; ++i) {
        for (std::size_t j = i; j < q; ++j) {
            CompensatedSum s;
            for (std::size_t r = 0; r < n; ++r) s.add(design(i, r) * design(j, r));
            xtx[i * q + j] = xtx[j * q + i] = s.value();
        }
        CompensatedSum s;
        for (std::size_t r = 0; r < n; ++r) s.add(design(i, r) * response[r]);
        xty[i] = s.value();
    }

    // Cholesky; a collapsed pivot identifies the first column that is a
    // linear combination of the previous ones.
    std::vector<double> L(q * q, 0.0);
    for (std::size_t j = 0; j < q; ++j) {
        double diag = xtx[j * q + j];
        for (std::size_t k = 0; k < j; ++k) diag -= L[j * q + k] * L[j * q + k];
        const double scale = std::fabs(xtx[j * q + j]);
        if (!(diag > 1e-10 * std::max(scale, 1e-300))) {
            const std::string name = j == 0 ? std::string("intercept") : predictor_names[j - 1];
            throw std::invalid_argument("design is rank deficient: column '" + name +
                                        "' is collinear with earlier columns");
        }
        L[j * q + j] = std::sqrt(diag);
        for (std::size_t i = j + 1; i < q; ++i) {
            double v = xtx[i * q + j];
            for (std::size_t k = 0; k < j; ++k) v -= L[i * q + k] * L[j * q + k];
            L[i * q + j] = v / L[j * q + j];
        }
    }

    // Solve L z = X'y, then L' b = z.
    std::vector<double> z(q, 0.0), coef(q, 0.0);
    for (std::size_t i = 0; i < q; ++i) {
        double v = xty[i];
        for (std::size_t k = 0; k < i; ++k) v -= L[i * q + k] * z[k];
        z[i] = v / L[i * q + i];
    }
    for (std::size_t ii = q; ii-- > 0;) {
        double v = z[ii];
        for (std::size_t k = ii + 1; k < q; ++k) v -= L[k * q + ii] * coef[k];
        coef[ii] = v / L[ii * q + ii];
    }

    OlsFit fit;
    fit.coef = coef;
    fit.fitted.resize(n);
    fit.resid.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
        double yhat = coef[0];
        for (std::size_t j = 1; j < q; ++j) yhat += coef[j] * predictors[j - 1][r];
        fit.fitted[r] = yhat;
        fit.resid[r] = response[r] - yhat;
    }
    return fit;
}

} // namespace condscan
