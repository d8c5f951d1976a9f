#include "ecagr/series.hpp"

#include <cmath>

namespace ecagr {

std::string to_string(SeriesUnit unit) {
    switch (unit) {
    case SeriesUnit::percent: return "percent";
    case SeriesUnit::fraction: return "fraction";
    case SeriesUnit::level: return "level";
    }
    return "?";
}

SeriesUnit unit_from_string(const std::string& text) {
    if (text == "percent") return SeriesUnit::percent;
    if (text == "fraction") return SeriesUnit::fraction;
    if (text == "level") return SeriesUnit::level;
    throw DataError("unknown unit tag '" + text +
                    "' (expected percent, fraction, or level)");
}

AnnualSeries::AnnualSeries(std::string name, int start_year,
                           std::vector<double> values, SeriesUnit unit)
    : name_(std::move(name)), start_year_(start_year),
      values_(std::move(values)), unit_(unit) {
    if (values_.empty()) {
        throw ValidationError("series '" + name_ + "' has no values");
    }
    for (std::size_t k = 0; k < values_.size(); ++k) {
        if (!std::isfinite(values_[k])) {
            throw ValidationError("series '" + name_ +
                                  "' has a non-finite value for year " +
                                  std::to_string(start_year_ + static_cast<int>(k)));
        }
    }
}

double AnnualSeries::at(int year) const {
    if (!covers(year)) {
        throw DataError("series '" + name_ + "' has no value for year " +
                        std::to_string(year) + " (covers " +
                        std::to_string(start_year_) + "-" +
                        std::to_string(last_year()) + ")");
    }
    return values_[static_cast<std::size_t>(year - start_year_)];
}

const std::string& role_name(SeriesRole role) {
    static const std::string names[] = {"gdp_agr", "fai_agr", "ec_agr",
                                        "secondary_share", "ec_level"};
    return names[static_cast<int>(role)];
}

SeriesRole role_from_name(const std::string& name) {
    for (SeriesRole role : all_roles()) {
        if (role_name(role) == name) return role;
    }
    throw DataError("unknown series role '" + name + "'");
}

const std::vector<SeriesRole>& all_roles() {
    static const std::vector<SeriesRole> roles = {
        SeriesRole::gdp_agr, SeriesRole::fai_agr, SeriesRole::ec_agr,
        SeriesRole::secondary_share, SeriesRole::ec_level};
    return roles;
}

void MacroDataset::add(SeriesRole role, AnnualSeries series) {
    if (has(role)) {
        throw ValidationError("dataset already has a series for role '" +
                              role_name(role) + "'");
    }
    series_.emplace(role, std::move(series));
}

bool MacroDataset::has(SeriesRole role) const noexcept {
    return series_.contains(role);
}

const AnnualSeries& MacroDataset::at(SeriesRole role) const {
    auto it = series_.find(role);
    if (it == series_.end()) {
        throw DataError("dataset has no series for role '" + role_name(role) +
                        "'");
    }
    return it->second;
}

void MacroDataset::require_window(std::initializer_list<SeriesRole> roles,
                                  int from, int to) const {
    for (SeriesRole role : roles) {
        const AnnualSeries& s = at(role);
        if (!s.covers(from, to)) {
            throw DataError("series '" + role_name(role) + "' does not cover " +
                            std::to_string(from) + "-" + std::to_string(to) +
                            " (covers " + std::to_string(s.start_year()) + "-" +
                            std::to_string(s.last_year()) + ")");
        }
    }
}

} // namespace ecagr
