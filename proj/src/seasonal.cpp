#include "banddist/seasonal.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "banddist/csv.hpp"

namespace banddist {
namespace {

std::vector<double> kernel_table(std::size_t period, double bandwidth) {
    std::vector<double> table(period);
    for (std::size_t d = 0; d < period; ++d) {
        table[d] = wrapped_gaussian(static_cast<double>(d), bandwidth, static_cast<double>(period));
    }
    return table;
}

std::size_t wrap(std::ptrdiff_t i, std::size_t n) {
    auto m = i % static_cast<std::ptrdiff_t>(n);
    if (m < 0) m += static_cast<std::ptrdiff_t>(n);
    return static_cast<std::size_t>(m);
}

std::vector<std::size_t> calendar_days(const TimeSeriesSet& set) {
    if (!set.has_labels()) throw Error(Errc::missing_date_label, "observations carry no date labels");
    std::vector<std::size_t> days(set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        auto date = parse_date(set.labels()[i]);
        if (!date) {
            throw Error(Errc::missing_date_label,
                        "row " + std::to_string(i + 1) + " label '" + set.labels()[i] + "' is not a date");
        }
        days[i] = day_of_year(*date);
    }
    return days;
}

}  // namespace

std::optional<CalendarDate> parse_date(std::string_view text) {
    if (text.size() < 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto ok = [](std::string_view s, auto& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && p == s.data() + s.size();
    };
    if (!ok(text.substr(0, 4), y) || !ok(text.substr(5, 2), m) || !ok(text.substr(8, 2), d)) return std::nullopt;
    if (text.size() > 10 && text[10] != ' ' && text[10] != 'T') return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return CalendarDate{y, m, d};
}

unsigned day_of_year(const CalendarDate& date) {
    using namespace std::chrono;
    const year_month_day ymd{year{date.year}, month{date.month}, day{date.day}};
    const year_month_day jan1{year{date.year}, January, day{1}};
    return static_cast<unsigned>((sys_days{ymd} - sys_days{jan1}).count()) + 1;
}

double wrapped_gaussian(double offset, double bandwidth, double period) {
    // Images beyond 8 bandwidths contribute below 1e-14 of the peak.
    const int images = static_cast<int>(std::ceil(8.0 * bandwidth / period)) + 1;
    double acc = 0.0;
    for (int m = -images; m <= images; ++m) {
        const double z = (offset + m * period) / bandwidth;
        acc += std::exp(-0.5 * z * z);
    }
    return acc;
}

SeasonalSurface::SeasonalSurface(std::size_t day_length, std::vector<double> grid, SeasonalBandwidths bandwidths)
    : day_length_(day_length), grid_(std::move(grid)), bandwidths_(bandwidths) {
    if (day_length_ == 0 || grid_.size() != day_length_ * kCalendarDays) {
        throw Error(Errc::invalid_argument, "surface grid must be 366 x day length");
    }
    for (double v : grid_) {
        if (!std::isfinite(v)) throw Error(Errc::non_finite, "surface grid must be finite");
    }
}

double SeasonalSurface::operator()(std::ptrdiff_t t, std::ptrdiff_t day) const noexcept {
    return grid_[wrap(day - 1, kCalendarDays) * day_length_ + wrap(t, day_length_)];
}

std::vector<double> SeasonalSurface::daily_curve(std::size_t day) const {
    if (day < 1 || day > kCalendarDays) throw Error(Errc::invalid_argument, "calendar day must be in 1..366");
    auto first = grid_.begin() + static_cast<std::ptrdiff_t>((day - 1) * day_length_);
    return {first, first + static_cast<std::ptrdiff_t>(day_length_)};
}

SeasonalSurface fit_seasonal(const TimeSeriesSet& set, const SeasonalBandwidths& bandwidths) {
    if (!(bandwidths.time_of_day > 0.0) || !(bandwidths.day_of_year > 0.0)) {
        throw Error(Errc::invalid_argument, "bandwidths must be positive");
    }
    const auto days = calendar_days(set);
    const std::size_t len = set.length();

    // Aggregate replicates per calendar day (the smoother is linear).
    std::vector<double> day_sum(kCalendarDays * len, 0.0);
    std::vector<double> day_count(kCalendarDays, 0.0);
    for (std::size_t i = 0; i < set.size(); ++i) {
        const std::size_t d = days[i] - 1;
        day_count[d] += 1.0;
        for (std::size_t t = 0; t < len; ++t) day_sum[d * len + t] += set(i, t);
    }

    const auto kt = kernel_table(len, bandwidths.time_of_day);
    const auto kc = kernel_table(kCalendarDays, bandwidths.day_of_year);

    // Smooth along time of day first.
    std::vector<double> along_time(kCalendarDays * len, 0.0);
    double kt_total = 0.0;
    for (double w : kt) kt_total += w;
    for (std::size_t d = 0; d < kCalendarDays; ++d) {
        if (day_count[d] == 0.0) continue;
        for (std::size_t t = 0; t < len; ++t) {
            double acc = 0.0;
            for (std::size_t s = 0; s < len; ++s) {
                const auto lag = static_cast<std::ptrdiff_t>(t) - static_cast<std::ptrdiff_t>(s);
                acc += kt[wrap(lag, len)] * day_sum[d * len + s];
            }
            along_time[d * len + t] = acc;
        }
    }

    std::vector<double> grid(kCalendarDays * len, 0.0);
    const auto n_days = static_cast<std::ptrdiff_t>(kCalendarDays);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t cs = 0; cs < n_days; ++cs) {
        const auto c = static_cast<std::size_t>(cs);
        double weight = 0.0;
        std::vector<double> num(len, 0.0);
        for (std::size_t d = 0; d < kCalendarDays; ++d) {
            if (day_count[d] == 0.0) continue;
            const double w = kc[wrap(static_cast<std::ptrdiff_t>(c) - static_cast<std::ptrdiff_t>(d), kCalendarDays)];
            weight += w * day_count[d];
            for (std::size_t t = 0; t < len; ++t) num[t] += w * along_time[d * len + t];
        }
        const double denom = weight * kt_total;
        for (std::size_t t = 0; t < len; ++t) grid[c * len + t] = denom > 0.0 ? num[t] / denom : std::nan("");
    }
    for (std::size_t c = 0; c < kCalendarDays; ++c) {
        if (std::isnan(grid[c * len])) {
            throw Error(Errc::insufficient_data,
                        "calendar day " + std::to_string(c + 1) + " receives no kernel weight; widen the day bandwidth");
        }
    }
    return SeasonalSurface(len, std::move(grid), bandwidths);
}

TimeSeriesSet remove_seasonal(const TimeSeriesSet& set, const SeasonalSurface& surface) {
    if (set.length() != surface.day_length()) throw Error(Errc::length_mismatch, "day length differs from surface");
    const auto days = calendar_days(set);
    std::vector<double> out(set.values().begin(), set.values().end());
    for (std::size_t i = 0; i < set.size(); ++i) {
        for (std::size_t t = 0; t < set.length(); ++t) {
            out[i * set.length() + t] -= surface(static_cast<std::ptrdiff_t>(t), static_cast<std::ptrdiff_t>(days[i]));
        }
    }
    return validate_set(out, set.size(), set.length(), set.labels());
}

TimeSeriesSet add_seasonal(const TimeSeriesSet& residuals, const SeasonalSurface& surface) {
    if (residuals.length() != surface.day_length()) throw Error(Errc::length_mismatch, "day length differs from surface");
    const auto days = calendar_days(residuals);
    std::vector<double> out(residuals.values().begin(), residuals.values().end());
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        for (std::size_t t = 0; t < residuals.length(); ++t) {
            out[i * residuals.length() + t] +=
                surface(static_cast<std::ptrdiff_t>(t), static_cast<std::ptrdiff_t>(days[i]));
        }
    }
    return validate_set(out, residuals.size(), residuals.length(), residuals.labels());
}

void write_surface(std::ostream& out, const SeasonalSurface& surface) {
    out << "day";
    for (std::size_t t = 0; t < surface.day_length(); ++t) out << ",t" << t + 1;
    out << '\n';
    for (std::size_t c = 0; c < kCalendarDays; ++c) {
        out << c + 1;
        for (std::size_t t = 0; t < surface.day_length(); ++t) {
            out << ',' << csv::format_double(surface.grid()[c * surface.day_length() + t]);
        }
        out << '\n';
    }
}

}  // namespace banddist
