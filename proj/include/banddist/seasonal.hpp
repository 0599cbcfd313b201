#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "banddist/core.hpp"

namespace banddist {

inline constexpr std::size_t kCalendarDays = 366;

struct CalendarDate {
    int year;
    unsigned month;
    unsigned day;

    friend bool operator==(const CalendarDate&, const CalendarDate&) = default;
    friend auto operator<=>(const CalendarDate&, const CalendarDate&) = default;
};

/// Parses YYYY-MM-DD (optionally followed by a time part), validating the
/// calendar date.
std::optional<CalendarDate> parse_date(std::string_view text);

/// Ordinal day of year, 1..366 (Feb 29 is 60 in leap years).
unsigned day_of_year(const CalendarDate& date);

struct SeasonalBandwidths {
    double time_of_day = 12.0;  // in readings (two hours at ten-minute steps)
    double day_of_year = 15.0;  // in days
};

/// Expected value at (time of day, calendar day); periodic in both axes.
class SeasonalSurface {
public:
    SeasonalSurface(std::size_t day_length, std::vector<double> grid, SeasonalBandwidths bandwidths);

    std::size_t day_length() const noexcept { return day_length_; }
    const SeasonalBandwidths& bandwidths() const noexcept { return bandwidths_; }

    /// t is 0-based time of day, day is the 1-based calendar day; both wrap.
    double operator()(std::ptrdiff_t t, std::ptrdiff_t day) const noexcept;

    /// Grid row for calendar day `day` (1-based).
    std::vector<double> daily_curve(std::size_t day) const;

    const std::vector<double>& grid() const noexcept { return grid_; }

private:
    std::size_t day_length_;
    std::vector<double> grid_;  // kCalendarDays rows of day_length_ values
    SeasonalBandwidths bandwidths_;
};

/// Nadaraya-Watson fit with a product of wrapped Gaussian kernels over time of
/// day and day of year. Labels must be dates. Throws Errc::missing_date_label,
/// Errc::insufficient_data if any grid cell receives zero total weight.
SeasonalSurface fit_seasonal(const TimeSeriesSet& set, const SeasonalBandwidths& bandwidths = {});

/// value(t) - surface(t, day of year) per row; labels are carried over.
TimeSeriesSet remove_seasonal(const TimeSeriesSet& set, const SeasonalSurface& surface);

/// Inverse of remove_seasonal.
TimeSeriesSet add_seasonal(const TimeSeriesSet& residuals, const SeasonalSurface& surface);

/// CSV grid: header "day,t1..tT", one row per calendar day.
void write_surface(std::ostream& out, const SeasonalSurface& surface);

/// Wrapped Gaussian weight at circular offset `offset` on a circle of
/// circumference `period`.
double wrapped_gaussian(double offset, double bandwidth, double period);

}  // namespace banddist
