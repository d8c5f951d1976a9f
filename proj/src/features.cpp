#include "ecagr/features.hpp"

namespace ecagr::features {

namespace {

void require_percent(const AnnualSeries& series, const char* op) {
    if (series.unit() != SeriesUnit::percent) {
        throw ValidationError(std::string(op) + ": series '" + series.name() +
                              "' must be in percent units, got " +
                              to_string(series.unit()));
    }
}

} // namespace

FaiIndicatorSeries fai_indicator(const AnnualSeries& fai_agr) {
    require_percent(fai_agr, "fai_indicator");
    if (fai_agr.size() < 3) {
        throw ValidationError("fai_indicator: series '" + fai_agr.name() +
                              "' needs at least 3 values, got " +
                              std::to_string(fai_agr.size()));
    }
    std::vector<double> values;
    values.reserve(fai_agr.size() - 2);
    for (int year = fai_agr.start_year() + 2; year <= fai_agr.last_year();
         ++year) {
        values.push_back(fai_agr.at(year) + 2.0 * fai_agr.at(year - 2) -
                         2.0 * fai_agr.at(year - 1));
    }
    AnnualSeries indicator("fai_indicator", fai_agr.start_year() + 2,
                           std::move(values), SeriesUnit::percent);
    return FaiIndicatorSeries{fai_agr, std::move(indicator)};
}

double lagged_indicator(const FaiIndicatorSeries& indicator, int target_year,
                        int lag) {
    if (lag < 0) {
        throw ValidationError("lagged_indicator: lag must be >= 0, got " +
                              std::to_string(lag));
    }
    const int source_year = target_year - lag;
    if (!indicator.indicator.covers(source_year)) {
        throw DataError("fai indicator not defined at year " +
                        std::to_string(source_year) + " (lag " +
                        std::to_string(lag) + " behind " +
                        std::to_string(target_year) + "; defined " +
                        std::to_string(indicator.indicator.start_year()) + "-" +
                        std::to_string(indicator.indicator.last_year()) + ")");
    }
    return indicator.indicator.at(source_year);
}

ShareDeltaSeries share_delta(const AnnualSeries& share) {
    require_percent(share, "share_delta");
    if (share.size() < 2) {
        throw ValidationError("share_delta: series '" + share.name() +
                              "' needs at least 2 values, got " +
                              std::to_string(share.size()));
    }
    std::vector<double> values;
    values.reserve(share.size() - 1);
    for (int year = share.start_year() + 1; year <= share.last_year(); ++year) {
        values.push_back(share.at(year) - share.at(year - 1));
    }
    AnnualSeries delta("share_delta", share.start_year() + 1, std::move(values),
                       SeriesUnit::percent);
    return ShareDeltaSeries{share, std::move(delta)};
}

ShareProjection project_share_bounds(double share_prev, double share_prev2,
                                     int year) {
    if (!(share_prev > 0.0 && share_prev < 100.0) ||
        !(share_prev2 > 0.0 && share_prev2 < 100.0)) {
        throw ValidationError("project_share_bounds: shares must lie in (0, 100)");
    }
    ShareProjection projection;
    projection.year = year;
    // additive form: exact fixed point when the trend term vanishes
    const double trend = share_prev - share_prev2;
    projection.upper = share_prev + trend;
    projection.lower = share_prev + 1.3 * trend;
    projection.domain_warning =
        !(projection.upper > 0.0 && projection.upper < 100.0) ||
        !(projection.lower > 0.0 && projection.lower < 100.0);
    return projection;
}

std::vector<ShareProjection> chain_share_projection(const AnnualSeries& share,
                                                    int horizon) {
    if (horizon < 1) {
        throw ValidationError("chain_share_projection: horizon must be >= 1");
    }
    require_percent(share, "chain_share_projection");
    if (share.size() < 2) {
        throw ValidationError("chain_share_projection: series '" + share.name() +
                              "' needs at least 2 values");
    }
    double up_prev2 = share.at(share.last_year() - 1);
    double up_prev = share.at(share.last_year());
    double lo_prev2 = up_prev2;
    double lo_prev = up_prev;
    std::vector<ShareProjection> projections;
    projections.reserve(static_cast<std::size_t>(horizon));
    for (int k = 1; k <= horizon; ++k) {
        ShareProjection projection;
        projection.year = share.last_year() + k;
        projection.upper = up_prev + (up_prev - up_prev2);
        projection.lower = lo_prev + 1.3 * (lo_prev - lo_prev2);
        projection.domain_warning =
            !(projection.upper > 0.0 && projection.upper < 100.0) ||
            !(projection.lower > 0.0 && projection.lower < 100.0);
        projections.push_back(projection);
        up_prev2 = up_prev;
        up_prev = projection.upper;
        lo_prev2 = lo_prev;
        lo_prev = projection.lower;
    }
    return projections;
}

namespace {

DesignMatrix build_design(const MacroDataset& dataset, int from, int to,
                          const std::vector<int>& lags) {
    if (from > to) {
        throw ValidationError("design window is empty: " + std::to_string(from) +
                              " > " + std::to_string(to));
    }
    dataset.require_window({SeriesRole::gdp_agr, SeriesRole::ec_agr}, from, to);
    dataset.require_window({SeriesRole::secondary_share}, from - 1, to);
    const auto indicator = fai_indicator(dataset.at(SeriesRole::fai_agr));
    const auto delta = share_delta(dataset.at(SeriesRole::secondary_share));

    DesignMatrix design;
    design.predictor_names.push_back("gdp_growth");
    for (int lag : lags) {
        design.predictor_names.push_back("fai_indicator_lag" +
                                         std::to_string(lag));
    }
    design.predictor_names.push_back("share_delta");
    for (int year = from; year <= to; ++year) {
        std::vector<double> row;
        row.reserve(lags.size() + 2);
        row.push_back(dataset.at(SeriesRole::gdp_agr).at(year));
        for (int lag : lags) {
            row.push_back(lagged_indicator(indicator, year, lag));
        }
        row.push_back(delta.delta.at(year));
        design.rows.push_back(std::move(row));
        design.years.push_back(year);
        design.response.push_back(dataset.at(SeriesRole::ec_agr).at(year));
    }
    design.validate();
    return design;
}

} // namespace

DesignMatrix make_design(const MacroDataset& dataset, int from, int to,
                         int lag) {
    return build_design(dataset, from, to, {lag});
}

DesignMatrix make_candidate_design(const MacroDataset& dataset, int from,
                                   int to, const std::vector<int>& lags) {
    if (lags.empty()) {
        throw ValidationError("make_candidate_design: no lags given");
    }
    return build_design(dataset, from, to, lags);
}

} // namespace ecagr::features
