#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ecagr/linreg.hpp"
#include "ecagr/series.hpp"

namespace ecagr::forecast {

/// Scenario inputs for one forecast year: a GDP growth range, the realized
/// lagged FAI indicator (a point, not a range), and share-delta bounds.
/// All values in percentage points.
struct Scenario {
    int year = 0;
    double gdp_low = 0.0;
    double gdp_high = 0.0;
    double i_lag = 0.0;
    double d_low = 0.0;
    double d_high = 0.0;

    void validate() const;

    /// Flat key = value text document; # starts a comment.
    static Scenario load(const std::string& path);
    void save(const std::string& path) const;
};

/// Interval forecast for one year: growth-rate bounds and the implied
/// consumption levels off base_ec (trillion kWh).
struct ForecastResult {
    int year = 0;
    double agr_low = 0.0;
    double agr_high = 0.0;
    double ec_low = 0.0;
    double ec_high = 0.0;
    double base_ec = 0.0;
    Scenario scenario;
};

/// Level bounds implied by growth-rate bounds off a common base.
std::pair<double, double> level_bounds(double base_ec, double agr_low,
                                       double agr_high);

/// Evaluates the model at the scenario-box corners. Corners are chosen by
/// coefficient sign, so the result brackets the model over the box whatever
/// the signs of a refit's coefficients.
ForecastResult forecast_range(const FittedModel& model,
                              const Scenario& scenario, double base_ec);

/// One step of a chained multi-year forecast; levels continue from the
/// previous year's corresponding bound.
struct ChainStep {
    int year = 0;
    double agr_low = 0.0;
    double agr_high = 0.0;
    double ec_low = 0.0;
    double ec_high = 0.0;
    Scenario scenario;
};

/// Scenario years must be consecutive and ascending.
std::vector<ChainStep> forecast_chain(const FittedModel& model,
                                      const std::vector<Scenario>& scenarios,
                                      double base_ec);

/// Relative error of the implied consumption level off a common base year:
/// 100 * ((1 + f/100) / (1 + a/100) - 1). Overprediction is positive.
double ec_error(double forecast_agr, double actual_agr);

/// Mean absolute ec_error over matching years.
double mape(const std::map<int, double>& fitted,
            const std::map<int, double>& actual);

struct BacktestRow {
    int year = 0;
    double fitted = 0.0;
    double actual = 0.0;
    double error = 0.0; // ec_error(fitted, actual)
};

struct BacktestTable {
    std::vector<BacktestRow> rows;
    double mape = 0.0;
};

/// Per-year in-sample/out-of-sample evaluation of a fitted model against the
/// dataset's actual EC growth, with a MAPE summary.
BacktestTable backtest(const FittedModel& model, const MacroDataset& dataset,
                       int from, int to, int lag = 4);

} // namespace ecagr::forecast
