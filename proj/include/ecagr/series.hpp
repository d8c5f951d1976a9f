#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <vector>

#include "ecagr/errors.hpp"

namespace ecagr {

/// Unit tag for an annual series. Percent-unit values are percentage points
/// (7.5 means 7.5%); fraction-unit values are converted to percent (x100) at
/// the ingestion boundary, so in-memory series are percent or level only.
enum class SeriesUnit { percent, fraction, level };

std::string to_string(SeriesUnit unit);
SeriesUnit unit_from_string(const std::string& text);

/// A contiguous year-indexed sequence of finite real values. Value k belongs
/// to year start_year + k; there are no gaps by construction.
class AnnualSeries {
public:
    AnnualSeries(std::string name, int start_year, std::vector<double> values,
                 SeriesUnit unit);

    const std::string& name() const noexcept { return name_; }
    int start_year() const noexcept { return start_year_; }
    int last_year() const noexcept {
        return start_year_ + static_cast<int>(values_.size()) - 1;
    }
    std::size_t size() const noexcept { return values_.size(); }
    SeriesUnit unit() const noexcept { return unit_; }
    const std::vector<double>& values() const noexcept { return values_; }

    bool covers(int year) const noexcept {
        return year >= start_year_ && year <= last_year();
    }
    bool covers(int from, int to) const noexcept {
        return covers(from) && covers(to) && from <= to;
    }

    /// Value for a year; throws DataError when the year is outside the series.
    double at(int year) const;

    bool operator==(const AnnualSeries&) const = default;

private:
    std::string name_;
    int start_year_;
    std::vector<double> values_;
    SeriesUnit unit_;
};

/// The roles a macro dataset can provide.
enum class SeriesRole { gdp_agr, fai_agr, ec_agr, secondary_share, ec_level };

const std::string& role_name(SeriesRole role);
SeriesRole role_from_name(const std::string& name);
const std::vector<SeriesRole>& all_roles();

/// Named collection of annual series, one per role.
class MacroDataset {
public:
    /// Adds a series for a role; a duplicate role is a ValidationError.
    void add(SeriesRole role, AnnualSeries series);

    bool has(SeriesRole role) const noexcept;

    /// Series for a role; throws DataError when the role is absent.
    const AnnualSeries& at(SeriesRole role) const;

    const std::map<SeriesRole, AnnualSeries>& all() const noexcept {
        return series_;
    }

    /// Checks that every listed role is present and covers [from, to];
    /// throws DataError naming the first offending role and year.
    void require_window(std::initializer_list<SeriesRole> roles, int from,
                        int to) const;

    bool operator==(const MacroDataset&) const = default;

private:
    std::map<SeriesRole, AnnualSeries> series_;
};

} // namespace ecagr
