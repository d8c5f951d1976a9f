#pragma once

#include <string>
#include <vector>

#include "ecagr/errors.hpp"

namespace ecagr::cli {

/// One run's configuration, filled from flags (and optionally a config
/// file; flags win). Commands validate what they use.
struct RunConfig {
    std::string data_path;
    std::string manifest_path;
    int from_year = 0;
    int to_year = 0;
    double alpha = 0.05;
    int lag = 4;
    std::string model_path;
    std::vector<std::string> scenario_paths;
    double base_ec = 0.0; // 0 = look up ec_level in the dataset
    std::string format = "csv";
    std::string out_dir = ".";
    std::string compare_path;
    int horizon = 2;
    bool svg = false;

    void validate_common() const;
};

// Commands print a human-readable table to stdout and write their outputs
// under out_dir. They throw; the binary maps exception types to exit codes.
void cmd_fit(const RunConfig& config);
void cmd_diagnose(const RunConfig& config);
void cmd_forecast(const RunConfig& config);
void cmd_evaluate(const RunConfig& config);
void cmd_report(const RunConfig& config);

} // namespace ecagr::cli
