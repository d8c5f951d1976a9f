#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "ecagr/errors.hpp"

namespace ecagr {

/// Per-year rows of predictor values aligned with a response vector.
struct DesignMatrix {
    std::vector<int> years;
    std::vector<std::string> predictor_names;
    std::vector<std::vector<double>> rows; // n rows of p values
    std::vector<double> response;          // length n

    std::size_t n() const noexcept { return rows.size(); }
    std::size_t p() const noexcept { return predictor_names.size(); }

    /// Shape/finiteness invariants; throws ValidationError on violation.
    void validate() const;

    /// Copy with one predictor column removed.
    DesignMatrix without_column(std::size_t column) const;
};

/// Least-squares fit through the origin with textbook inference fields.
struct FittedModel {
    std::vector<std::string> predictor_names;
    std::vector<double> coefficients;
    std::vector<double> std_errors;
    std::vector<double> t_stats;
    std::vector<double> p_values;
    std::map<int, double> residuals; // year -> response minus fitted value
    double adj_r2 = 0.0;             // uncentered convention
    int fit_start_year = 0;
    int fit_end_year = 0;
};

/// Solves the normal equations X^T X b = X^T y by LDL^T factorization.
/// Degrees of freedom df = n - p (no intercept); standard errors from
/// s^2 (X^T X)^-1 with s^2 = SSR/df; two-sided p-values from Student-t.
/// R^2 is uncentered: 1 - SSR / sum(y^2).
///
/// Throws NumericError when n <= p (no degrees of freedom) or when the
/// normal matrix is singular / has reciprocal condition below 1e-12,
/// naming the dependent column.
FittedModel fit_through_origin(const DesignMatrix& design);

/// Dot product of the model coefficients with one predictor row.
double predict_row(const FittedModel& model, std::span<const double> row);

/// The three-predictor form: GDP growth, lagged FAI indicator, share delta,
/// all in percentage points. Throws ValidationError unless the model has
/// exactly three predictors.
double predict(const FittedModel& model, double gdp_growth,
               double fai_indicator_lagged, double share_delta);

/// Repeatedly refits, dropping the highest-p-value predictor while any
/// p-value exceeds alpha; ties break by dropping the later column. Throws
/// NumericError when elimination would empty the model.
FittedModel backward_eliminate(const DesignMatrix& design, double alpha);

} // namespace ecagr
