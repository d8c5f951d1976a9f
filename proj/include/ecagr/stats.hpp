#pragma once

#include <map>
#include <string>
#include <vector>

#include "ecagr/errors.hpp"
#include "ecagr/linreg.hpp"

namespace ecagr::stats {

/// Lower-tail standard normal probability.
double normal_cdf(double x);

/// Upper-tail standard normal probability.
double normal_sf(double x);

/// Upper-tail Student-t probability via the regularized incomplete beta
/// function (continued-fraction evaluation). df >= 1, x finite.
double t_sf(double x, int df);

/// Upper-tail chi-squared probability via the regularized incomplete gamma
/// function (series / continued fraction). df >= 1, x finite and >= 0.
double chi2_sf(double x, int df);

/// Outcome of a diagnostic test, reported against the 0.05 convention.
struct TestResult {
    std::string test_name;
    double statistic = 0.0;
    double p_value = 0.0;
    double critical_value = 0.05;
    int df_or_n = 0;

    bool passed() const noexcept { return p_value > critical_value; }
};

/// Breusch-Pagan heteroskedasticity test, LM = n * R^2 of the auxiliary
/// regression of squared residuals on the model predictors plus an
/// intercept; p-value from chi-squared with df = p. Residual keys must
/// equal the design years. All-equal squared residuals give LM = 0, p = 1.
TestResult breusch_pagan(const std::map<int, double>& residuals,
                         const DesignMatrix& design);

/// Variance-normalized Breusch-Pagan form ESS / (2 sigma^4), which assumes
/// Gaussian errors; reported alongside the LM form by the diagnose command.
TestResult breusch_pagan_ess(const std::map<int, double>& residuals,
                             const DesignMatrix& design);

/// Shapiro-Wilk normality test, Royston's 1995 approximation (AS R94) for
/// complete samples, 3 <= n <= 5000, not all values equal.
TestResult shapiro_wilk(const std::vector<double>& sample);

/// The normalized weight vector the W statistic correlates the ordered
/// sample against (full length n, antisymmetric, unit norm). Exposed for
/// diagnostics and testing.
std::vector<double> shapiro_wilk_weights(std::size_t n);

} // namespace ecagr::stats
