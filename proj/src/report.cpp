#include "ecagr/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "ecagr/detail/numfmt.hpp"
#include "ecagr/forecast.hpp"

namespace ecagr::report {

namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json value_or_null(double v) {
    if (std::isnan(v)) return nullptr;
    return v;
}

void write_cell(std::ostream& out, double v) {
    if (!std::isnan(v)) out << detail::format_double(v);
}

} // namespace

void PlotSeriesBundle::validate() const {
    for (const PlotSeries& s : series) {
        if (s.values.size() != years.size()) {
            throw ValidationError("plot series '" + s.name +
                                  "' length differs from the year axis");
        }
    }
    if (band) {
        if (band->lower.size() != years.size() ||
            band->upper.size() != years.size()) {
            throw ValidationError("plot band length differs from the year axis");
        }
        for (std::size_t i = 0; i < years.size(); ++i) {
            const double lo = band->lower[i];
            const double hi = band->upper[i];
            if (std::isnan(lo) != std::isnan(hi)) {
                throw ValidationError("plot band has a one-sided value in year " +
                                      std::to_string(years[i]));
            }
            if (!std::isnan(lo) && lo > hi) {
                throw ValidationError("plot band is inverted in year " +
                                      std::to_string(years[i]));
            }
        }
    }
    for (std::size_t i = 1; i < years.size(); ++i) {
        if (years[i] != years[i - 1] + 1) {
            throw ValidationError("plot year axis must be contiguous");
        }
    }
}

PlotSeriesBundle emit_fit_figure(const forecast::BacktestTable& table) {
    if (table.rows.empty()) {
        throw ValidationError("emit_fit_figure: empty backtest table");
    }
    PlotSeriesBundle bundle;
    bundle.title = "Fitted and actual EC growth";
    PlotSeries fitted{"fitted", {}};
    PlotSeries actual{"actual", {}};
    for (const auto& row : table.rows) {
        bundle.years.push_back(row.year);
        fitted.values.push_back(row.fitted);
        actual.values.push_back(row.actual);
    }
    bundle.series.push_back(std::move(fitted));
    bundle.series.push_back(std::move(actual));
    bundle.validate();
    return bundle;
}

PlotSeriesBundle emit_share_projection_figure(
    const AnnualSeries& history,
    const std::vector<features::ShareProjection>& projections) {
    for (std::size_t i = 0; i < projections.size(); ++i) {
        const int expected = history.last_year() + 1 + static_cast<int>(i);
        if (projections[i].year != expected) {
            throw ValidationError(
                "share projections must continue the history without gaps: "
                "expected year " + std::to_string(expected) + ", got " +
                std::to_string(projections[i].year));
        }
    }
    PlotSeriesBundle bundle;
    bundle.title = "Secondary-sector share and projected range";
    PlotSeries share{"share", {}};
    PlotBand band;
    for (int year = history.start_year(); year <= history.last_year(); ++year) {
        bundle.years.push_back(year);
        share.values.push_back(history.at(year));
        band.lower.push_back(kNaN);
        band.upper.push_back(kNaN);
    }
    for (const auto& projection : projections) {
        bundle.years.push_back(projection.year);
        share.values.push_back(kNaN);
        band.lower.push_back(projection.lower);
        band.upper.push_back(projection.upper);
    }
    bundle.series.push_back(std::move(share));
    if (!projections.empty()) bundle.band = std::move(band);
    bundle.validate();
    return bundle;
}

void write_bundle_csv(const PlotSeriesBundle& bundle, std::ostream& out) {
    bundle.validate();
    out << "year";
    for (const auto& s : bundle.series) out << ',' << s.name;
    if (bundle.band) out << ",band_lower,band_upper";
    out << '\n';
    for (std::size_t i = 0; i < bundle.years.size(); ++i) {
        out << bundle.years[i];
        for (const auto& s : bundle.series) {
            out << ',';
            write_cell(out, s.values[i]);
        }
        if (bundle.band) {
            out << ',';
            write_cell(out, bundle.band->lower[i]);
            out << ',';
            write_cell(out, bundle.band->upper[i]);
        }
        out << '\n';
    }
}

void write_bundle_json(const PlotSeriesBundle& bundle, std::ostream& out) {
    bundle.validate();
    json doc;
    doc["title"] = bundle.title;
    doc["x"] = bundle.years;
    doc["series"] = json::object();
    for (const auto& s : bundle.series) {
        json values = json::array();
        for (double v : s.values) values.push_back(value_or_null(v));
        doc["series"][s.name] = std::move(values);
    }
    if (bundle.band) {
        json lower = json::array();
        json upper = json::array();
        for (std::size_t i = 0; i < bundle.years.size(); ++i) {
            lower.push_back(value_or_null(bundle.band->lower[i]));
            upper.push_back(value_or_null(bundle.band->upper[i]));
        }
        doc["shaded_band"] = {{"lower", std::move(lower)},
                              {"upper", std::move(upper)}};
    }
    out << doc.dump(2) << '\n';
}

void write_bundle_svg(const PlotSeriesBundle& bundle, std::ostream& out) {
    bundle.validate();
    const double width = 640, height = 400;
    const double ml = 56, mr = 16, mt = 28, mb = 36;

    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    auto take = [&](double v) {
        if (std::isnan(v)) return;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    };
    for (const auto& s : bundle.series) {
        for (double v : s.values) take(v);
    }
    if (bundle.band) {
        for (double v : bundle.band->lower) take(v);
        for (double v : bundle.band->upper) take(v);
    }
    if (!(hi > lo)) {
        hi = lo + 1.0;
        lo -= 1.0;
    }
    const double pad = 0.06 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double x0 = bundle.years.front();
    const double x1 = bundle.years.back();
    auto sx = [&](double year) {
        return x1 > x0 ? ml + (year - x0) / (x1 - x0) * (width - ml - mr)
                       : (ml + width - mr) / 2.0;
    };
    auto sy = [&](double v) {
        return mt + (hi - v) / (hi - lo) * (height - mt - mb);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    out << "<text x=\"" << width / 2 << "\" y=\"16\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"13\">" << bundle.title
        << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\""
        << width - ml - mr << "\" height=\"" << height - mt - mb
        << "\" fill=\"none\" stroke=\"#888\"/>\n";

    if (bundle.band) {
        std::string pts;
        for (std::size_t i = 0; i < bundle.years.size(); ++i) {
            if (std::isnan(bundle.band->upper[i])) continue;
            pts += std::to_string(sx(bundle.years[i])) + "," +
                   std::to_string(sy(bundle.band->upper[i])) + " ";
        }
        for (std::size_t i = bundle.years.size(); i-- > 0;) {
            if (std::isnan(bundle.band->lower[i])) continue;
            pts += std::to_string(sx(bundle.years[i])) + "," +
                   std::to_string(sy(bundle.band->lower[i])) + " ";
        }
        if (!pts.empty()) {
            out << "<polygon points=\"" << pts
                << "\" fill=\"#bbbbbb\" fill-opacity=\"0.5\" stroke=\"none\"/>\n";
        }
    }

    static const char* colors[] = {"#1f6fb4", "#d0622a", "#3a8f3a", "#7a4fa0"};
    for (std::size_t k = 0; k < bundle.series.size(); ++k) {
        std::string pts;
        for (std::size_t i = 0; i < bundle.years.size(); ++i) {
            const double v = bundle.series[k].values[i];
            if (std::isnan(v)) continue;
            pts += std::to_string(sx(bundle.years[i])) + "," +
                   std::to_string(sy(v)) + " ";
        }
        out << "<polyline points=\"" << pts << "\" fill=\"none\" stroke=\""
            << colors[k % 4] << "\" stroke-width=\"1.5\"/>\n";
        out << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 16 + 14 * k
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
            << colors[k % 4] << "\">" << bundle.series[k].name << "</text>\n";
    }

    // axis labels: first/last year, min/max value
    out << "<text x=\"" << ml << "\" y=\"" << height - 12
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << bundle.years.front() << "</text>\n";
    out << "<text x=\"" << width - mr << "\" y=\"" << height - 12
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << bundle.years.back() << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << sy(lo + pad)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << detail::format_double(std::round((lo + pad) * 100) / 100)
        << "</text>\n";
    out << "<text x=\"" << ml - 6 << "\" y=\"" << sy(hi - pad)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << detail::format_double(std::round((hi - pad) * 100) / 100)
        << "</text>\n";
    out << "</svg>\n";
}

void write_fit_report_csv(const FittedModel& model, std::ostream& out) {
    out << "predictor,coefficient,std_error,t_stat,p_value\n";
    for (std::size_t j = 0; j < model.coefficients.size(); ++j) {
        out << model.predictor_names[j] << ','
            << detail::format_double(model.coefficients[j]) << ','
            << detail::format_double(model.std_errors[j]) << ','
            << detail::format_double(model.t_stats[j]) << ','
            << detail::format_double(model.p_values[j]) << '\n';
    }
    out << "adj_r2," << detail::format_double(model.adj_r2) << ",,,\n";
}

void write_fit_report_json(const FittedModel& model, std::ostream& out) {
    json doc;
    doc["fit_start_year"] = model.fit_start_year;
    doc["fit_end_year"] = model.fit_end_year;
    doc["adj_r2"] = model.adj_r2;
    doc["predictors"] = json::array();
    for (std::size_t j = 0; j < model.coefficients.size(); ++j) {
        doc["predictors"].push_back({{"name", model.predictor_names[j]},
                                     {"coefficient", model.coefficients[j]},
                                     {"std_error", model.std_errors[j]},
                                     {"t_stat", model.t_stats[j]},
                                     {"p_value", model.p_values[j]}});
    }
    out << doc.dump(2) << '\n';
}

void write_diagnostics_csv(const std::vector<stats::TestResult>& results,
                           std::ostream& out) {
    out << "test,statistic,p_value,critical_value,df_or_n,passed\n";
    for (const auto& r : results) {
        out << r.test_name << ',' << detail::format_double(r.statistic) << ','
            << detail::format_double(r.p_value) << ','
            << detail::format_double(r.critical_value) << ',' << r.df_or_n
            << ',' << (r.passed() ? "yes" : "no") << '\n';
    }
}

void write_diagnostics_json(const std::vector<stats::TestResult>& results,
                            std::ostream& out) {
    json doc = json::array();
    for (const auto& r : results) {
        doc.push_back({{"test", r.test_name},
                       {"statistic", r.statistic},
                       {"p_value", r.p_value},
                       {"critical_value", r.critical_value},
                       {"df_or_n", r.df_or_n},
                       {"passed", r.passed()}});
    }
    out << doc.dump(2) << '\n';
}

void write_backtest_csv(
    const forecast::BacktestTable& table,
    const std::map<std::string, std::map<int, double>>& rivals,
    std::ostream& out) {
    out << "year,fitted,actual,error";
    for (const auto& [name, values] : rivals) {
        out << ',' << name << ',' << name << "_error";
    }
    out << '\n';
    for (const auto& row : table.rows) {
        out << row.year << ',' << detail::format_double(row.fitted) << ','
            << detail::format_double(row.actual) << ','
            << detail::format_double(row.error);
        for (const auto& [name, values] : rivals) {
            out << ',';
            auto it = values.find(row.year);
            if (it != values.end()) {
                out << detail::format_double(it->second) << ','
                    << detail::format_double(
                           forecast::ec_error(it->second, row.actual));
            } else {
                out << ',';
            }
        }
        out << '\n';
    }
    out << "mape," << detail::format_double(table.mape) << ",,";
    for (std::size_t k = 0; k < rivals.size(); ++k) out << ",,";
    out << '\n';
}

void write_backtest_json(
    const forecast::BacktestTable& table,
    const std::map<std::string, std::map<int, double>>& rivals,
    std::ostream& out) {
    json doc;
    doc["rows"] = json::array();
    for (const auto& row : table.rows) {
        json r = {{"year", row.year},
                  {"fitted", row.fitted},
                  {"actual", row.actual},
                  {"error", row.error}};
        for (const auto& [name, values] : rivals) {
            auto it = values.find(row.year);
            if (it != values.end()) {
                r[name] = it->second;
                r[name + "_error"] = forecast::ec_error(it->second, row.actual);
            }
        }
        doc["rows"].push_back(std::move(r));
    }
    doc["mape"] = table.mape;
    out << doc.dump(2) << '\n';
}

void write_forecast_csv(const std::vector<forecast::ChainStep>& steps,
                        std::ostream& out) {
    out << "year,agr_low,agr_high,ec_low,ec_high,gdp_low,gdp_high,i_lag,d_low,"
           "d_high\n";
    for (const auto& s : steps) {
        out << s.year << ',' << detail::format_double(s.agr_low) << ','
            << detail::format_double(s.agr_high) << ','
            << detail::format_double(s.ec_low) << ','
            << detail::format_double(s.ec_high) << ','
            << detail::format_double(s.scenario.gdp_low) << ','
            << detail::format_double(s.scenario.gdp_high) << ','
            << detail::format_double(s.scenario.i_lag) << ','
            << detail::format_double(s.scenario.d_low) << ','
            << detail::format_double(s.scenario.d_high) << '\n';
    }
}

void write_forecast_json(const std::vector<forecast::ChainStep>& steps,
                         std::ostream& out) {
    json doc = json::array();
    for (const auto& s : steps) {
        doc.push_back({{"year", s.year},
                       {"agr_low", s.agr_low},
                       {"agr_high", s.agr_high},
                       {"ec_low", s.ec_low},
                       {"ec_high", s.ec_high},
                       {"scenario",
                        {{"gdp_low", s.scenario.gdp_low},
                         {"gdp_high", s.scenario.gdp_high},
                         {"i_lag", s.scenario.i_lag},
                         {"d_low", s.scenario.d_low},
                         {"d_high", s.scenario.d_high}}}});
    }
    out << doc.dump(2) << '\n';
}

} // namespace ecagr::report
