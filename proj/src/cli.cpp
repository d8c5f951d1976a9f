#include "ecagr/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "ecagr/dataio.hpp"
#include "ecagr/features.hpp"
#include "ecagr/forecast.hpp"
#include "ecagr/report.hpp"
#include "ecagr/stats.hpp"

namespace ecagr::cli {

namespace fs = std::filesystem;

namespace {

// All primary outputs are staged and written together, so a failing run
// leaves no partial files behind.
class OutputSet {
public:
    explicit OutputSet(const std::string& out_dir) : dir_(out_dir) {}

    void stage(const std::string& filename, std::string content) {
        staged_.emplace_back(fs::path(dir_) / filename, std::move(content));
    }

    void stage_path(const fs::path& path, std::string content) {
        staged_.emplace_back(path, std::move(content));
    }

    // write everything to temporaries first, then rename, so a failed run
    // leaves no partial outputs
    void commit() {
        std::error_code ec;
        std::vector<fs::path> temps;
        for (const auto& [path, content] : staged_) {
            if (path.has_parent_path()) {
                fs::create_directories(path.parent_path(), ec);
            }
            const fs::path tmp = path.string() + ".tmp";
            std::ofstream out(tmp, std::ios::trunc);
            if (!out) throw DataError("unwritable path: " + tmp.string());
            out << content;
            out.close();
            if (!out) throw DataError("write failed: " + tmp.string());
            temps.push_back(tmp);
        }
        for (std::size_t i = 0; i < staged_.size(); ++i) {
            fs::rename(temps[i], staged_[i].first);
        }
        for (const auto& [path, content] : staged_) {
            std::cout << "wrote " << path.string() << '\n';
        }
    }

private:
    std::string dir_;
    std::vector<std::pair<fs::path, std::string>> staged_;
};

void append_run_log(const std::string& out_dir, const std::string& line) {
    // timestamps live only in this sidecar log, never in data outputs
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    std::ofstream log(fs::path(out_dir) / "run.log", std::ios::app);
    if (!log) return;
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    log << stamp << ' ' << line << '\n';
}

MacroDataset load_data(const RunConfig& config) {
    if (config.data_path.empty()) {
        throw ValidationError("--data is required for this command");
    }
    if (config.manifest_path.empty()) {
        throw ValidationError("--manifest is required for this command");
    }
    const auto manifest = dataio::DatasetManifest::load(config.manifest_path);
    return dataio::load_dataset(config.data_path, manifest);
}

FittedModel load_model_arg(const RunConfig& config) {
    if (config.model_path.empty()) {
        throw ValidationError("--model is required for this command");
    }
    return dataio::load_model(config.model_path);
}

std::string table_ext(const RunConfig& config) {
    return config.format == "json" ? ".json" : ".csv";
}

// A fitted model encodes its indicator lag in the predictor name; designs
// rebuilt for it must use that lag, not whatever --lag says.
int lag_from_model(const FittedModel& model, int fallback) {
    const std::string prefix = "fai_indicator_lag";
    for (const std::string& name : model.predictor_names) {
        if (name.rfind(prefix, 0) == 0) {
            try {
                return std::stoi(name.substr(prefix.size()));
            } catch (const std::exception&) {
                break;
            }
        }
    }
    return fallback;
}

std::string agr2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string level3(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

void print_model(const FittedModel& model) {
    std::printf("fit window %d-%d, adjusted R^2 %.4f\n", model.fit_start_year,
                model.fit_end_year, model.adj_r2);
    std::printf("%-22s %12s %12s %9s %12s\n", "predictor", "coefficient",
                "std_error", "t", "p_value");
    for (std::size_t j = 0; j < model.coefficients.size(); ++j) {
        std::printf("%-22s %12.5f %12.5f %9.3f %12.4g\n",
                    model.predictor_names[j].c_str(), model.coefficients[j],
                    model.std_errors[j], model.t_stats[j], model.p_values[j]);
    }
}

} // namespace

void RunConfig::validate_common() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("--alpha must lie in (0, 1)");
    }
    if (lag < 0) throw ValidationError("--lag must be >= 0");
    if (format != "csv" && format != "json") {
        throw ValidationError("--format must be csv or json");
    }
    if (horizon < 1) throw ValidationError("--horizon must be >= 1");
}

void cmd_fit(const RunConfig& config) {
    config.validate_common();
    if (config.from_year == 0 || config.to_year == 0) {
        throw ValidationError("fit needs --from and --to");
    }
    if (config.from_year > config.to_year) {
        throw ValidationError("--from exceeds --to");
    }
    const MacroDataset dataset = load_data(config);
    const DesignMatrix design = features::make_design(
        dataset, config.from_year, config.to_year, config.lag);
    const FittedModel model = fit_through_origin(design);
    print_model(model);

    std::ostringstream fit_report;
    if (config.format == "json") report::write_fit_report_json(model, fit_report);
    else report::write_fit_report_csv(model, fit_report);

    OutputSet outputs(config.out_dir);
    if (!config.model_path.empty() &&
        fs::path(config.model_path).has_parent_path()) {
        // honor an explicit path outside out_dir
        outputs.stage_path(config.model_path, dataio::model_document(model));
    } else {
        const std::string name = config.model_path.empty()
                                     ? "model.json"
                                     : config.model_path;
        outputs.stage(name, dataio::model_document(model));
    }
    outputs.stage(std::string("fit_report") + table_ext(config),
                  fit_report.str());
    outputs.commit();
    append_run_log(config.out_dir, "fit ok");
}

void cmd_diagnose(const RunConfig& config) {
    config.validate_common();
    const FittedModel model = load_model_arg(config);
    const MacroDataset dataset = load_data(config);
    const DesignMatrix design =
        features::make_design(dataset, model.fit_start_year,
                              model.fit_end_year,
                              lag_from_model(model, config.lag));

    std::vector<stats::TestResult> results;
    results.push_back(stats::breusch_pagan(model.residuals, design));
    results.push_back(stats::breusch_pagan_ess(model.residuals, design));
    std::vector<double> residual_values;
    residual_values.reserve(model.residuals.size());
    for (const auto& [year, value] : model.residuals) {
        residual_values.push_back(value);
    }
    try {
        results.push_back(stats::shapiro_wilk(residual_values));
    } catch (const ValidationError&) {
        // zero-variance residuals: normality is vacuous, report a
        // degenerate pass instead of aborting the whole report
        stats::TestResult degenerate;
        degenerate.test_name = "shapiro_wilk";
        degenerate.statistic = 1.0;
        degenerate.p_value = 1.0;
        degenerate.df_or_n = static_cast<int>(residual_values.size());
        results.push_back(degenerate);
        std::fprintf(stderr,
                     "note: shapiro_wilk degenerate, residuals have zero "
                     "variance\n");
    }

    std::printf("%-18s %12s %12s %9s %7s\n", "test", "statistic", "p_value",
                "critical", "passed");
    for (const auto& r : results) {
        std::printf("%-18s %12.4f %12.4f %9.2f %7s\n", r.test_name.c_str(),
                    r.statistic, r.p_value, r.critical_value,
                    r.passed() ? "yes" : "no");
    }

    std::ostringstream body;
    if (config.format == "json") report::write_diagnostics_json(results, body);
    else report::write_diagnostics_csv(results, body);
    OutputSet outputs(config.out_dir);
    outputs.stage(std::string("diagnostics") + table_ext(config), body.str());
    outputs.commit();
    append_run_log(config.out_dir, "diagnose ok");
}

void cmd_forecast(const RunConfig& config) {
    config.validate_common();
    const FittedModel model = load_model_arg(config);
    if (config.scenario_paths.empty()) {
        throw ValidationError("forecast needs at least one --scenario file");
    }
    std::vector<forecast::Scenario> scenarios;
    scenarios.reserve(config.scenario_paths.size());
    for (const auto& path : config.scenario_paths) {
        scenarios.push_back(forecast::Scenario::load(path));
    }

    double base_ec = config.base_ec;
    if (base_ec == 0.0) {
        if (config.data_path.empty()) {
            throw ValidationError(
                "missing base level: give --base-ec or --data/--manifest");
        }
        const MacroDataset dataset = load_data(config);
        base_ec = dataset.at(SeriesRole::ec_level).at(scenarios.front().year - 1);
    }
    if (!(base_ec > 0.0)) {
        throw ValidationError("base consumption level must be positive");
    }

    const auto steps = forecast::forecast_chain(model, scenarios, base_ec);
    std::printf("base level %s trillion kWh\n", level3(base_ec).c_str());
    std::printf("%6s %10s %10s %10s %10s\n", "year", "agr_low", "agr_high",
                "ec_low", "ec_high");
    for (const auto& s : steps) {
        std::printf("%6d %10s %10s %10s %10s\n", s.year,
                    agr2(s.agr_low).c_str(), agr2(s.agr_high).c_str(),
                    level3(s.ec_low).c_str(), level3(s.ec_high).c_str());
    }

    std::ostringstream body;
    if (config.format == "json") report::write_forecast_json(steps, body);
    else report::write_forecast_csv(steps, body);
    OutputSet outputs(config.out_dir);
    outputs.stage(std::string("forecast") + table_ext(config), body.str());
    outputs.commit();
    append_run_log(config.out_dir, "forecast ok");
}

void cmd_evaluate(const RunConfig& config) {
    config.validate_common();
    const FittedModel model = load_model_arg(config);
    const MacroDataset dataset = load_data(config);
    const int from = config.from_year != 0 ? config.from_year : model.fit_start_year;
    const int to = config.to_year != 0 ? config.to_year : model.fit_end_year;
    const auto table = forecast::backtest(model, dataset, from, to,
                                          lag_from_model(model, config.lag));

    std::map<std::string, std::map<int, double>> rivals;
    if (!config.compare_path.empty()) {
        rivals = dataio::load_rival_forecasts(config.compare_path);
    }

    std::printf("%6s %10s %10s %10s\n", "year", "fitted", "actual", "error");
    for (const auto& row : table.rows) {
        std::printf("%6d %10s %10s %10s\n", row.year, agr2(row.fitted).c_str(),
                    agr2(row.actual).c_str(), agr2(row.error).c_str());
    }
    std::printf("mape %.3f\n", table.mape);

    std::ostringstream body;
    if (config.format == "json") {
        report::write_backtest_json(table, rivals, body);
    } else {
        report::write_backtest_csv(table, rivals, body);
    }
    OutputSet outputs(config.out_dir);
    outputs.stage(std::string("backtest") + table_ext(config), body.str());
    outputs.commit();
    append_run_log(config.out_dir, "evaluate ok");
}

void cmd_report(const RunConfig& config) {
    config.validate_common();
    const FittedModel model = load_model_arg(config);
    const MacroDataset dataset = load_data(config);
    const auto table =
        forecast::backtest(model, dataset, model.fit_start_year,
                           model.fit_end_year, lag_from_model(model, config.lag));
    const auto fit_bundle = report::emit_fit_figure(table);
    const auto projections = features::chain_share_projection(
        dataset.at(SeriesRole::secondary_share), config.horizon);
    for (const auto& projection : projections) {
        if (projection.domain_warning) {
            std::fprintf(stderr,
                         "warning: projected share leaves (0, 100) in year "
                         "%d\n",
                         projection.year);
        }
    }
    const auto share_bundle = report::emit_share_projection_figure(
        dataset.at(SeriesRole::secondary_share), projections);

    OutputSet outputs(config.out_dir);
    for (const auto* bundle : {&fit_bundle, &share_bundle}) {
        const std::string stem =
            bundle == &fit_bundle ? "fit_figure" : "share_projection";
        std::ostringstream body;
        if (config.format == "json") report::write_bundle_json(*bundle, body);
        else report::write_bundle_csv(*bundle, body);
        outputs.stage(stem + table_ext(config), body.str());
        if (config.svg) {
            std::ostringstream svg;
            report::write_bundle_svg(*bundle, svg);
            outputs.stage(stem + ".svg", svg.str());
        }
    }
    outputs.commit();
    append_run_log(config.out_dir, "report ok");
    std::printf("report bundles written to %s\n", config.out_dir.c_str());
}

} // namespace ecagr::cli
