#include "ecagr/forecast.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "ecagr/detail/numfmt.hpp"
#include "ecagr/features.hpp"

namespace ecagr::forecast {

void Scenario::validate() const {
    if (!(gdp_low <= gdp_high)) {
        throw ValidationError("scenario " + std::to_string(year) +
                              ": gdp_low exceeds gdp_high");
    }
    if (!(d_low <= d_high)) {
        throw ValidationError("scenario " + std::to_string(year) +
                              ": d_low exceeds d_high");
    }
    for (double v : {gdp_low, gdp_high, i_lag, d_low, d_high}) {
        if (!std::isfinite(v)) {
            throw ValidationError("scenario " + std::to_string(year) +
                                  ": non-finite value");
        }
    }
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open scenario file: " + path);
    Scenario scenario;
    std::map<std::string, bool> seen = {{"year", false},   {"gdp_low", false},
                                        {"gdp_high", false}, {"i_lag", false},
                                        {"d_low", false},  {"d_high", false}};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        const auto eq = line.find('=');
        std::string key = line.substr(0, eq == std::string::npos ? line.size() : eq);
        key.erase(0, key.find_first_not_of(" \t\r"));
        key.erase(key.find_last_not_of(" \t\r") + 1);
        if (key.empty()) continue;
        if (eq == std::string::npos) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": expected key = value");
        }
        double value;
        if (!detail::parse_double(line.substr(eq + 1), value)) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": non-numeric value for '" + key + "'");
        }
        auto it = seen.find(key);
        if (it == seen.end()) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": unknown scenario key '" + key + "'");
        }
        if (it->second) {
            throw DataError(path + ":" + std::to_string(line_no) +
                            ": duplicate key '" + key + "'");
        }
        it->second = true;
        if (key == "year") scenario.year = static_cast<int>(value);
        else if (key == "gdp_low") scenario.gdp_low = value;
        else if (key == "gdp_high") scenario.gdp_high = value;
        else if (key == "i_lag") scenario.i_lag = value;
        else if (key == "d_low") scenario.d_low = value;
        else scenario.d_high = value;
    }
    for (const auto& [key, present] : seen) {
        if (!present) {
            throw DataError(path + ": missing scenario key '" + key + "'");
        }
    }
    scenario.validate();
    return scenario;
}

void Scenario::save(const std::string& path) const {
    validate();
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("unwritable path: " + path);
    out << "year = " << year << '\n'
        << "gdp_low = " << detail::format_double(gdp_low) << '\n'
        << "gdp_high = " << detail::format_double(gdp_high) << '\n'
        << "i_lag = " << detail::format_double(i_lag) << '\n'
        << "d_low = " << detail::format_double(d_low) << '\n'
        << "d_high = " << detail::format_double(d_high) << '\n';
}

std::pair<double, double> level_bounds(double base_ec, double agr_low,
                                       double agr_high) {
    if (!(base_ec > 0.0)) {
        throw ValidationError("base consumption level must be positive");
    }
    return {base_ec * (1.0 + agr_low / 100.0),
            base_ec * (1.0 + agr_high / 100.0)};
}

namespace {

struct AgrBounds {
    double low = 0.0;
    double high = 0.0;
};

AgrBounds agr_bounds(const FittedModel& model, const Scenario& scenario) {
    scenario.validate();
    if (model.coefficients.size() != 3) {
        throw ValidationError("forecast needs the three-predictor model, got " +
                              std::to_string(model.coefficients.size()) +
                              " predictors");
    }
    // corner selection by coefficient sign keeps the bounds meaning for
    // refits where a coefficient flips negative
    const bool g_pos = model.coefficients[0] >= 0.0;
    const bool d_pos = model.coefficients[2] >= 0.0;
    const double low = predict(model, g_pos ? scenario.gdp_low : scenario.gdp_high,
                               scenario.i_lag,
                               d_pos ? scenario.d_low : scenario.d_high);
    const double high = predict(model, g_pos ? scenario.gdp_high : scenario.gdp_low,
                                scenario.i_lag,
                                d_pos ? scenario.d_high : scenario.d_low);
    if (!(low <= high)) {
        throw NumericError("forecast bounds inverted; corner selection failed");
    }
    return {low, high};
}

} // namespace

ForecastResult forecast_range(const FittedModel& model,
                              const Scenario& scenario, double base_ec) {
    const AgrBounds bounds = agr_bounds(model, scenario);
    ForecastResult result;
    result.year = scenario.year;
    result.scenario = scenario;
    result.agr_low = bounds.low;
    result.agr_high = bounds.high;
    result.base_ec = base_ec;
    std::tie(result.ec_low, result.ec_high) =
        level_bounds(base_ec, bounds.low, bounds.high);
    return result;
}

std::vector<ChainStep> forecast_chain(const FittedModel& model,
                                      const std::vector<Scenario>& scenarios,
                                      double base_ec) {
    if (scenarios.empty()) {
        throw ValidationError("forecast chain needs at least one scenario");
    }
    for (std::size_t i = 1; i < scenarios.size(); ++i) {
        if (scenarios[i].year != scenarios[i - 1].year + 1) {
            throw ValidationError("forecast chain years must be consecutive: " +
                                  std::to_string(scenarios[i - 1].year) +
                                  " -> " + std::to_string(scenarios[i].year));
        }
    }
    std::vector<ChainStep> steps;
    steps.reserve(scenarios.size());
    double base_low = base_ec;
    double base_high = base_ec;
    for (const Scenario& scenario : scenarios) {
        const AgrBounds bounds = agr_bounds(model, scenario);
        ChainStep step;
        step.year = scenario.year;
        step.scenario = scenario;
        step.agr_low = bounds.low;
        step.agr_high = bounds.high;
        step.ec_low = level_bounds(base_low, bounds.low, bounds.low).first;
        step.ec_high = level_bounds(base_high, bounds.high, bounds.high).first;
        steps.push_back(step);
        base_low = step.ec_low;
        base_high = step.ec_high;
    }
    return steps;
}

double ec_error(double forecast_agr, double actual_agr) {
    if (!(actual_agr > -100.0)) {
        throw ValidationError("actual growth rate must exceed -100");
    }
    return 100.0 *
           ((1.0 + forecast_agr / 100.0) / (1.0 + actual_agr / 100.0) - 1.0);
}

double mape(const std::map<int, double>& fitted,
            const std::map<int, double>& actual) {
    if (fitted.empty()) throw ValidationError("mape: no values");
    if (fitted.size() != actual.size()) {
        throw ValidationError("mape: mismatched years");
    }
    double sum = 0.0;
    for (const auto& [year, f] : fitted) {
        auto it = actual.find(year);
        if (it == actual.end()) {
            throw ValidationError("mape: no actual value for year " +
                                  std::to_string(year));
        }
        sum += std::fabs(ec_error(f, it->second));
    }
    return sum / static_cast<double>(fitted.size());
}

BacktestTable backtest(const FittedModel& model, const MacroDataset& dataset,
                       int from, int to, int lag) {
    if (from > to) {
        throw ValidationError("backtest range is empty: " + std::to_string(from) +
                              " > " + std::to_string(to));
    }
    const DesignMatrix design = features::make_design(dataset, from, to, lag);
    BacktestTable table;
    std::map<int, double> fitted_by_year;
    std::map<int, double> actual_by_year;
    for (std::size_t i = 0; i < design.n(); ++i) {
        BacktestRow row;
        row.year = design.years[i];
        row.fitted = predict_row(model, design.rows[i]);
        row.actual = design.response[i];
        row.error = ec_error(row.fitted, row.actual);
        fitted_by_year[row.year] = row.fitted;
        actual_by_year[row.year] = row.actual;
        table.rows.push_back(row);
    }
    table.mape = mape(fitted_by_year, actual_by_year);
    return table;
}

} // namespace ecagr::forecast
