#include "ecagr/dataio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ecagr/detail/numfmt.hpp"

namespace ecagr::dataio {

namespace {

using nlohmann::json;

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cell += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (c != '\r') {
            cell += c;
        }
    }
    cells.push_back(cell);
    return cells;
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows; // ragged rows are padded
    std::string path;

    std::size_t column(const std::string& name) const {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (header[j] == name) return j;
        }
        throw DataError("missing column '" + name + "' in " + path);
    }
};

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open file: " + path);
    CsvTable table;
    table.path = path;
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty file: " + path);
    table.header = split_csv_line(line);
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        auto cells = split_csv_line(line);
        if (cells.size() > table.header.size()) {
            throw DataError(path + ": row " +
                            std::to_string(table.rows.size() + 2) +
                            " has more cells than the header");
        }
        cells.resize(table.header.size());
        table.rows.push_back(std::move(cells));
    }
    return table;
}

json read_json_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw DataError(std::string("cannot open ") + what + ": " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw DataError(std::string("malformed ") + what + " " + path + ": " +
                        e.what());
    }
    return doc;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("unwritable path: " + path);
    out << content;
    if (!out) throw DataError("write failed: " + path);
}

} // namespace

DatasetManifest DatasetManifest::load(const std::string& path) {
    const json doc = read_json_file(path, "manifest");
    DatasetManifest manifest;
    if (!doc.contains("schema_version") ||
        !doc["schema_version"].is_number_integer()) {
        throw DataError("manifest " + path + " lacks an integer schema_version");
    }
    manifest.schema_version = doc["schema_version"].get<int>();
    if (manifest.schema_version != 1) {
        throw DataError("manifest " + path + " has schema_version " +
                        std::to_string(manifest.schema_version) +
                        ", expected 1");
    }
    if (!doc.contains("series") || !doc["series"].is_object()) {
        throw DataError("manifest " + path + " lacks a series object");
    }
    for (const auto& [key, value] : doc["series"].items()) {
        const SeriesRole role = role_from_name(key);
        SeriesSpec spec;
        if (!value.contains("column") || !value["column"].is_string()) {
            throw DataError("manifest " + path + ": series '" + key +
                            "' lacks a column name");
        }
        spec.column = value["column"].get<std::string>();
        if (!value.contains("unit")) {
            throw DataError("manifest " + path + ": series '" + key +
                            "' lacks a unit tag");
        }
        spec.unit = unit_from_string(value["unit"].get<std::string>());
        manifest.series.emplace(role, spec);
    }
    if (manifest.series.empty()) {
        throw DataError("manifest " + path + " maps no series");
    }
    return manifest;
}

void DatasetManifest::save(const std::string& path) const {
    json doc;
    doc["schema_version"] = schema_version;
    doc["series"] = json::object();
    for (const auto& [role, spec] : series) {
        doc["series"][role_name(role)] = {{"column", spec.column},
                                          {"unit", to_string(spec.unit)}};
    }
    write_text_file(path, doc.dump(2) + "\n");
}

MacroDataset load_dataset(const std::string& csv_path,
                          const DatasetManifest& manifest) {
    const CsvTable table = read_csv(csv_path);
    const std::size_t year_col = table.column("year");

    std::vector<int> years(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        double y;
        if (!detail::parse_double(table.rows[i][year_col], y) ||
            y != std::floor(y)) {
            throw DataError(csv_path + ": row " + std::to_string(i + 2) +
                            ": non-numeric year '" + table.rows[i][year_col] +
                            "'");
        }
        years[i] = static_cast<int>(y);
        if (i > 0 && years[i] != years[i - 1] + 1) {
            if (years[i] > years[i - 1] + 1) {
                throw DataError(csv_path + ": row " + std::to_string(i + 2) +
                                ": year gap, no row for year " +
                                std::to_string(years[i - 1] + 1));
            }
            throw DataError(csv_path + ": row " + std::to_string(i + 2) +
                            ": year column must increase by 1 (" +
                            std::to_string(years[i - 1]) + " -> " +
                            std::to_string(years[i]) + ")");
        }
    }

    MacroDataset dataset;
    for (const auto& [role, spec] : manifest.series) {
        const std::size_t col = table.column(spec.column);
        std::vector<double> values;
        int start_year = 0;
        bool run_ended = false;
        for (std::size_t i = 0; i < table.rows.size(); ++i) {
            const std::string& cell = table.rows[i][col];
            if (cell.empty()) {
                if (!values.empty()) run_ended = true;
                continue;
            }
            double v;
            if (!detail::parse_double(cell, v)) {
                throw DataError(csv_path + ": row " + std::to_string(i + 2) +
                                ", column '" + spec.column +
                                "': non-numeric cell '" + cell + "'");
            }
            if (run_ended) {
                // report the first missing year inside the gap
                const int gap_year = start_year + static_cast<int>(values.size());
                throw DataError(csv_path + ": column '" + spec.column +
                                "': year gap, no value for year " +
                                std::to_string(gap_year));
            }
            if (values.empty()) start_year = years[i];
            if (spec.unit == SeriesUnit::fraction) v *= 100.0;
            values.push_back(v);
        }
        if (values.empty()) {
            throw DataError(csv_path + ": column '" + spec.column +
                            "' has no values");
        }
        const SeriesUnit stored_unit = spec.unit == SeriesUnit::level
                                           ? SeriesUnit::level
                                           : SeriesUnit::percent;
        dataset.add(role, AnnualSeries(role_name(role), start_year,
                                       std::move(values), stored_unit));
    }
    return dataset;
}

void save_dataset(const MacroDataset& dataset, const std::string& csv_path) {
    int min_year = 0, max_year = 0;
    bool first = true;
    for (const auto& [role, series] : dataset.all()) {
        if (first) {
            min_year = series.start_year();
            max_year = series.last_year();
            first = false;
        } else {
            min_year = std::min(min_year, series.start_year());
            max_year = std::max(max_year, series.last_year());
        }
    }
    if (first) throw ValidationError("cannot save an empty dataset");

    std::ostringstream out;
    out << "year";
    for (const auto& [role, series] : dataset.all()) out << ',' << role_name(role);
    out << '\n';
    for (int year = min_year; year <= max_year; ++year) {
        out << year;
        for (const auto& [role, series] : dataset.all()) {
            out << ',';
            if (series.covers(year)) out << detail::format_double(series.at(year));
        }
        out << '\n';
    }
    write_text_file(csv_path, out.str());
}

DatasetManifest manifest_for(const MacroDataset& dataset) {
    DatasetManifest manifest;
    for (const auto& [role, series] : dataset.all()) {
        manifest.series.emplace(role, SeriesSpec{role_name(role), series.unit()});
    }
    return manifest;
}

namespace {

void validate_model(const FittedModel& model, const char* action) {
    const bool loading = *action == 'l';
    const std::size_t p = model.coefficients.size();
    if (p == 0) {
        const std::string msg = "model has no coefficients (p >= 1 required)";
        if (loading) throw DataError(msg);
        throw ValidationError(msg);
    }
    if (model.predictor_names.size() != p || model.std_errors.size() != p ||
        model.t_stats.size() != p || model.p_values.size() != p) {
        const std::string msg =
            std::string(action) + ": model field lengths are inconsistent";
        if (loading) throw DataError(msg);
        throw ValidationError(msg);
    }
    auto finite = [&](double v, const char* field) {
        if (!std::isfinite(v)) {
            const std::string msg =
                std::string(action) + ": non-finite " + field;
            if (loading) throw DataError(msg);
            throw ValidationError(msg);
        }
    };
    for (std::size_t j = 0; j < p; ++j) {
        finite(model.coefficients[j], "coefficient");
        finite(model.std_errors[j], "standard error");
        finite(model.t_stats[j], "t statistic");
        finite(model.p_values[j], "p-value");
    }
    finite(model.adj_r2, "adjusted R^2");
    for (const auto& [year, value] : model.residuals) finite(value, "residual");
    if (model.fit_start_year > model.fit_end_year) {
        const std::string msg =
            std::string(action) + ": fit window start exceeds end";
        if (loading) throw DataError(msg);
        throw ValidationError(msg);
    }
}

} // namespace

std::string model_document(const FittedModel& model) {
    validate_model(model, "save_model");
    json doc;
    doc["schema_version"] = 1;
    doc["fit_start_year"] = model.fit_start_year;
    doc["fit_end_year"] = model.fit_end_year;
    doc["predictors"] = model.predictor_names;
    doc["coefficients"] = model.coefficients;
    doc["std_errors"] = model.std_errors;
    doc["t_stats"] = model.t_stats;
    doc["p_values"] = model.p_values;
    doc["adj_r2"] = model.adj_r2;
    doc["residuals"] = json::array();
    for (const auto& [year, value] : model.residuals) {
        doc["residuals"].push_back({{"year", year}, {"value", value}});
    }
    return doc.dump(2) + "\n";
}

void save_model(const FittedModel& model, const std::string& path) {
    write_text_file(path, model_document(model));
}

FittedModel load_model(const std::string& path) {
    const json doc = read_json_file(path, "model document");
    try {
        if (!doc.contains("schema_version") ||
            !doc["schema_version"].is_number_integer()) {
            throw DataError("model document " + path +
                            " lacks an integer schema_version");
        }
        if (const int v = doc["schema_version"].get<int>(); v != 1) {
            throw DataError("model document " + path + " has schema_version " +
                            std::to_string(v) + ", expected 1");
        }
        FittedModel model;
        model.fit_start_year = doc.at("fit_start_year").get<int>();
        model.fit_end_year = doc.at("fit_end_year").get<int>();
        model.predictor_names =
            doc.at("predictors").get<std::vector<std::string>>();
        model.coefficients = doc.at("coefficients").get<std::vector<double>>();
        model.std_errors = doc.at("std_errors").get<std::vector<double>>();
        model.t_stats = doc.at("t_stats").get<std::vector<double>>();
        model.p_values = doc.at("p_values").get<std::vector<double>>();
        model.adj_r2 = doc.at("adj_r2").get<double>();
        for (const auto& entry : doc.at("residuals")) {
            model.residuals[entry.at("year").get<int>()] =
                entry.at("value").get<double>();
        }
        validate_model(model, "load_model");
        return model;
    } catch (const json::exception& e) {
        throw DataError("malformed model document " + path + ": " + e.what());
    }
}

std::map<std::string, std::map<int, double>>
load_rival_forecasts(const std::string& csv_path) {
    const CsvTable table = read_csv(csv_path);
    const std::size_t year_col = table.column("year");
    std::map<std::string, std::map<int, double>> rivals;
    for (std::size_t j = 0; j < table.header.size(); ++j) {
        if (j == year_col) continue;
        if (table.header[j].empty()) {
            throw DataError(csv_path + ": unnamed rival column");
        }
        rivals[table.header[j]] = {};
    }
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        double y;
        if (!detail::parse_double(table.rows[i][year_col], y)) {
            throw DataError(csv_path + ": row " + std::to_string(i + 2) +
                            ": non-numeric year");
        }
        for (std::size_t j = 0; j < table.header.size(); ++j) {
            if (j == year_col || table.rows[i][j].empty()) continue;
            double v;
            if (!detail::parse_double(table.rows[i][j], v)) {
                throw DataError(csv_path + ": row " + std::to_string(i + 2) +
                                ", column '" + table.header[j] +
                                "': non-numeric cell");
            }
            rivals[table.header[j]][static_cast<int>(y)] = v;
        }
    }
    return rivals;
}

} // namespace ecagr::dataio
