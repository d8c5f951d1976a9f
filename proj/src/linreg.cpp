#include "ecagr/linreg.hpp"

#include <cmath>
#include <limits>

#include "ecagr/detail/ldlt.hpp"
#include "ecagr/stats.hpp"

namespace ecagr {

void DesignMatrix::validate() const {
    const std::size_t rows_n = rows.size();
    const std::size_t cols_p = predictor_names.size();
    if (cols_p == 0) throw ValidationError("design matrix has no predictors");
    if (rows_n == 0) throw ValidationError("design matrix has no rows");
    if (years.size() != rows_n || response.size() != rows_n) {
        throw ValidationError("design matrix rows, years, and response sizes differ");
    }
    for (std::size_t i = 0; i < rows_n; ++i) {
        if (rows[i].size() != cols_p) {
            throw ValidationError("design row for year " +
                                  std::to_string(years[i]) +
                                  " has the wrong number of predictors");
        }
        for (double v : rows[i]) {
            if (!std::isfinite(v)) {
                throw ValidationError("non-finite predictor value in year " +
                                      std::to_string(years[i]));
            }
        }
        if (!std::isfinite(response[i])) {
            throw ValidationError("non-finite response value in year " +
                                  std::to_string(years[i]));
        }
    }
}

DesignMatrix DesignMatrix::without_column(std::size_t column) const {
    DesignMatrix out;
    out.years = years;
    out.response = response;
    for (std::size_t j = 0; j < predictor_names.size(); ++j) {
        if (j != column) out.predictor_names.push_back(predictor_names[j]);
    }
    out.rows.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<double> r;
        r.reserve(row.size() - 1);
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j != column) r.push_back(row[j]);
        }
        out.rows.push_back(std::move(r));
    }
    return out;
}

FittedModel fit_through_origin(const DesignMatrix& design) {
    design.validate();
    const std::size_t n = design.n();
    const std::size_t p = design.p();
    if (n <= p) {
        throw NumericError("no degrees of freedom: n = " + std::to_string(n) +
                           " rows, p = " + std::to_string(p) + " predictors");
    }

    detail::SymmetricMatrix A(p);
    std::vector<double> b(p, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = design.rows[i];
        for (std::size_t j = 0; j < p; ++j) {
            b[j] += row[j] * design.response[i];
            for (std::size_t k = j; k < p; ++k) {
                A.at(j, k) += row[j] * row[k];
            }
        }
    }
    for (std::size_t j = 0; j < p; ++j) {
        for (std::size_t k = 0; k < j; ++k) A.at(j, k) = A.at(k, j);
    }

    const auto f = detail::ldlt_factor(A);
    if (!f.ok) {
        throw NumericError("singular design: column '" +
                           design.predictor_names[f.failed_column] +
                           "' is linearly dependent on earlier columns");
    }
    if (detail::rcond_estimate(A, f) < 1e-12) {
        // pick the column with the most collapsed pivot for the message
        std::size_t worst = 0;
        double worst_ratio = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < p; ++j) {
            const double ratio = f.diag[j] / std::max(A.at(j, j), 1e-300);
            if (ratio < worst_ratio) {
                worst_ratio = ratio;
                worst = j;
            }
        }
        throw NumericError("ill-conditioned design (rcond < 1e-12): column '" +
                           design.predictor_names[worst] +
                           "' is nearly dependent on the others");
    }

    FittedModel model;
    model.predictor_names = design.predictor_names;
    model.coefficients = detail::ldlt_solve(f, b);
    model.fit_start_year = design.years.front();
    model.fit_end_year = design.years.back();

    double ssr = 0.0;
    double yy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double fit = 0.0;
        for (std::size_t j = 0; j < p; ++j) {
            fit += model.coefficients[j] * design.rows[i][j];
        }
        const double resid = design.response[i] - fit;
        model.residuals[design.years[i]] = resid;
        ssr += resid * resid;
        yy += design.response[i] * design.response[i];
    }

    const double df = static_cast<double>(n - p);
    const double s2 = ssr / df;
    const auto inv = detail::ldlt_inverse(f);
    model.std_errors.resize(p);
    model.t_stats.resize(p);
    model.p_values.resize(p);
    for (std::size_t j = 0; j < p; ++j) {
        model.std_errors[j] = std::sqrt(s2 * inv[j][j]);
        if (model.std_errors[j] > 0.0) {
            model.t_stats[j] = model.coefficients[j] / model.std_errors[j];
            model.p_values[j] =
                2.0 * stats::t_sf(std::fabs(model.t_stats[j]), int(n - p));
        } else {
            // exact fit: the statistic degenerates, significance is total
            model.t_stats[j] = std::numeric_limits<double>::infinity();
            model.p_values[j] = 0.0;
        }
    }

    // uncentered R^2; a zero response vector is fit perfectly by zero betas
    const double r2 = yy > 0.0 ? 1.0 - ssr / yy : 1.0;
    model.adj_r2 = 1.0 - (1.0 - r2) * static_cast<double>(n) / df;
    return model;
}

double predict_row(const FittedModel& model, std::span<const double> row) {
    if (row.size() != model.coefficients.size()) {
        throw ValidationError("predictor arity mismatch: model has " +
                              std::to_string(model.coefficients.size()) +
                              ", got " + std::to_string(row.size()));
    }
    double value = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) {
        value += model.coefficients[j] * row[j];
    }
    return value;
}

double predict(const FittedModel& model, double gdp_growth,
               double fai_indicator_lagged, double share_delta) {
    const double row[3] = {gdp_growth, fai_indicator_lagged, share_delta};
    return predict_row(model, row);
}

FittedModel backward_eliminate(const DesignMatrix& design, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("alpha must be in (0, 1), got " +
                              std::to_string(alpha));
    }
    DesignMatrix current = design;
    while (true) {
        FittedModel model = fit_through_origin(current);
        std::size_t worst = 0;
        double worst_p = -1.0;
        for (std::size_t j = 0; j < model.p_values.size(); ++j) {
            if (model.p_values[j] >= worst_p) { // ties drop the later column
                worst_p = model.p_values[j];
                worst = j;
            }
        }
        if (worst_p <= alpha) return model;
        if (current.p() == 1) {
            throw NumericError("no significant predictors at alpha = " +
                               std::to_string(alpha));
        }
        current = current.without_column(worst);
    }
}

} // namespace ecagr
