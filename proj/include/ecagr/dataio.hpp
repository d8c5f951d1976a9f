#pragma once

#include <map>
#include <string>

#include "ecagr/linreg.hpp"
#include "ecagr/series.hpp"

namespace ecagr::dataio {

/// Where to find one series in the data file and how to read its numbers.
struct SeriesSpec {
    std::string column;
    SeriesUnit unit = SeriesUnit::percent;

    bool operator==(const SeriesSpec&) const = default;
};

/// Role-to-column mapping for a wide CSV data file. Every entry must declare
/// its unit; fraction-unit columns are multiplied by 100 on load.
struct DatasetManifest {
    int schema_version = 1;
    std::map<SeriesRole, SeriesSpec> series;

    static DatasetManifest load(const std::string& path);
    void save(const std::string& path) const;

    bool operator==(const DatasetManifest&) const = default;
};

/// Loads the wide CSV named columns out of `csv_path` per the manifest.
/// The year column must increase strictly by one; each mapped column must
/// hold one contiguous run of values. Errors carry row/column context.
MacroDataset load_dataset(const std::string& csv_path,
                          const DatasetManifest& manifest);

/// Writes the dataset back out in the canonical wide layout (shortest
/// round-trip number formatting, percent/level units).
void save_dataset(const MacroDataset& dataset, const std::string& csv_path);

/// Manifest matching save_dataset's canonical layout.
DatasetManifest manifest_for(const MacroDataset& dataset);

/// Model document persistence (JSON, schema_version 1). Save refuses
/// non-finite fields and empty coefficient lists; load re-validates.
std::string model_document(const FittedModel& model);
void save_model(const FittedModel& model, const std::string& path);
FittedModel load_model(const std::string& path);

/// Rival forecast columns for evaluation tables: header `year,<name...>`,
/// one column per rival source, blank cells allowed.
std::map<std::string, std::map<int, double>>
load_rival_forecasts(const std::string& csv_path);

} // namespace ecagr::dataio
