#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "ecagr/features.hpp"
#include "ecagr/forecast.hpp"
#include "ecagr/stats.hpp"

namespace ecagr::report {

/// Plot-ready data: named series over a shared year axis, plus an optional
/// shaded band. NaN marks a year a series does not cover; band years must
/// satisfy lower <= upper wherever both are present.
struct PlotSeries {
    std::string name;
    std::vector<double> values;
};

struct PlotBand {
    std::vector<double> lower;
    std::vector<double> upper;
};

struct PlotSeriesBundle {
    std::string title;
    std::vector<int> years;
    std::vector<PlotSeries> series;
    std::optional<PlotBand> band;

    void validate() const;
};

/// Fitted and actual growth series over the evaluated window.
PlotSeriesBundle emit_fit_figure(const forecast::BacktestTable& table);

/// Share history plus the projected upper/lower band; projections must
/// continue the history without a gap.
PlotSeriesBundle
emit_share_projection_figure(const AnnualSeries& history,
                             const std::vector<features::ShareProjection>& projections);

void write_bundle_csv(const PlotSeriesBundle& bundle, std::ostream& out);
void write_bundle_json(const PlotSeriesBundle& bundle, std::ostream& out);

/// Minimal static rendering (polylines + band polygon); no dependencies.
void write_bundle_svg(const PlotSeriesBundle& bundle, std::ostream& out);

// Tabular emitters used by the command-line tool. Values are written with
// shortest round-trip formatting so emitted files are lossless.
void write_fit_report_csv(const FittedModel& model, std::ostream& out);
void write_fit_report_json(const FittedModel& model, std::ostream& out);

void write_diagnostics_csv(const std::vector<stats::TestResult>& results,
                           std::ostream& out);
void write_diagnostics_json(const std::vector<stats::TestResult>& results,
                            std::ostream& out);

/// Rival columns add `<name>` and `<name>_error` per rival source.
void write_backtest_csv(
    const forecast::BacktestTable& table,
    const std::map<std::string, std::map<int, double>>& rivals,
    std::ostream& out);
void write_backtest_json(
    const forecast::BacktestTable& table,
    const std::map<std::string, std::map<int, double>>& rivals,
    std::ostream& out);

void write_forecast_csv(const std::vector<forecast::ChainStep>& steps,
                        std::ostream& out);
void write_forecast_json(const std::vector<forecast::ChainStep>& steps,
                         std::ostream& out);

} // namespace ecagr::report
