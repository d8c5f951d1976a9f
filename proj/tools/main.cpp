#include <cstdio>
#include <exception>
#include <functional>
#include <string>

#include <CLI11.hpp>

#include "ecagr/cli.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

void add_common_options(CLI::App* cmd, ecagr::cli::RunConfig& config) {
    cmd->add_option("--data", config.data_path, "wide CSV data file");
    cmd->add_option("--manifest", config.manifest_path,
                    "role-to-column manifest (JSON)");
    cmd->add_option("--from", config.from_year, "first year of the window");
    cmd->add_option("--to", config.to_year, "last year of the window");
    cmd->add_option("--alpha", config.alpha, "significance level")
        ->capture_default_str();
    cmd->add_option("--lag", config.lag, "FAI indicator lag in years")
        ->capture_default_str();
    cmd->add_option("--model", config.model_path, "model document path");
    cmd->add_option("--scenario", config.scenario_paths,
                    "scenario file (repeat for a chained multi-year forecast)");
    cmd->add_option("--base-ec", config.base_ec,
                    "base-year consumption level, trillion kWh");
    cmd->add_option("--format", config.format, "output table format: csv|json")
        ->capture_default_str();
    cmd->add_option("--out", config.out_dir, "output directory")
        ->capture_default_str();
    cmd->add_option("--compare", config.compare_path,
                    "rival forecast CSV for evaluation tables");
    cmd->add_option("--horizon", config.horizon,
                    "share projection horizon for report")
        ->capture_default_str();
    cmd->add_flag("--svg", config.svg, "also render report figures as SVG");
    // options not recognized here (notably --config) route to the main app
    cmd->fallthrough();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Electricity-consumption growth modeling toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "INI file with per-command [sections]; flags override it");

    ecagr::cli::RunConfig config;
    std::function<void(const ecagr::cli::RunConfig&)> action;

    struct Cmd {
        const char* name;
        const char* help;
        void (*fn)(const ecagr::cli::RunConfig&);
    };
    static const Cmd cmds[] = {
        {"fit", "fit the growth model over a year window", ecagr::cli::cmd_fit},
        {"diagnose", "residual diagnostics for a fitted model",
         ecagr::cli::cmd_diagnose},
        {"forecast", "scenario interval forecast", ecagr::cli::cmd_forecast},
        {"evaluate", "per-year backtest with error metrics",
         ecagr::cli::cmd_evaluate},
        {"report", "emit plot-data bundles", ecagr::cli::cmd_report},
    };
    for (const Cmd& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        add_common_options(sub, config);
        sub->callback([&action, fn = c.fn] { action = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::fprintf(stderr, "error: validation: %s\n", e.what());
        return kExitValidation;
    }

    try {
        action(config);
        return kExitOk;
    } catch (const ecagr::ValidationError& e) {
        std::fprintf(stderr, "error: validation: %s\n", e.what());
        return kExitValidation;
    } catch (const ecagr::DataError& e) {
        std::fprintf(stderr, "error: data: %s\n", e.what());
        return kExitData;
    } catch (const ecagr::NumericError& e) {
        std::fprintf(stderr, "error: numerical: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: internal: %s\n", e.what());
        return kExitNumerical;
    }
}
