#include "correlate/series.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace correlate {

namespace {

bool all_digits(const std::string& s, std::size_t from, std::size_t count) {
    if (from + count > s.size())
        return false;
    for (std::size_t i = from; i < from + count; ++i)
        if (s[i] < '0' || s[i] > '9')
            return false;
    return true;
}

}  // namespace

CalendarDate parse_date(const std::string& text) {
    // yyyy-mm-dd, no leniency: lengths and separators are fixed.
    if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
        !all_digits(text, 0, 4) || !all_digits(text, 5, 2) || !all_digits(text, 8, 2))
        throw std::invalid_argument("malformed date '" + text + "' (expected yyyy-mm-dd)");

    const int y = std::stoi(text.substr(0, 4));
    const unsigned m = static_cast<unsigned>(std::stoi(text.substr(5, 2)));
    const unsigned d = static_cast<unsigned>(std::stoi(text.substr(8, 2)));
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m},
                                          std::chrono::day{d}};
    if (!ymd.ok())
        throw std::invalid_argument("invalid date '" + text + "'");
    return CalendarDate{ymd};
}

std::string format_date(CalendarDate date) {
    const std::chrono::year_month_day ymd{date};
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", int(ymd.year()), unsigned(ymd.month()),
                  unsigned(ymd.day()));
    return buf;
}

int year_of(CalendarDate date) {
    return int(std::chrono::year_month_day{date}.year());
}

std::int64_t weeks_between(CalendarDate anchor, CalendarDate date, bool snap) {
    const std::int64_t days = (date - anchor).count();
    if (days % 7 == 0)
        return days / 7;
    if (!snap)
        throw std::invalid_argument("off-grid date " + format_date(date) + " (anchor " +
                                    format_date(anchor) + ", offset not a multiple of 7 days)");
    // Round to the nearest week boundary; 7 is odd so exact ties cannot occur.
    return std::llround(static_cast<double>(days) / 7.0);
}

WeekGrid::WeekGrid(CalendarDate start, std::int64_t length) : start_(start), length_(length) {
    if (length < 1)
        throw std::invalid_argument("week grid needs at least one week");
}

CalendarDate WeekGrid::date_of(std::int64_t index) const {
    if (index < 0 || index >= length_)
        throw std::out_of_range("week index " + std::to_string(index) + " outside grid of " +
                                std::to_string(length_) + " weeks");
    return start_ + std::chrono::days{7 * index};
}

std::int64_t WeekGrid::index_of(CalendarDate date, bool snap) const {
    const std::int64_t i = weeks_between(start_, date, snap);
    if (i < 0 || i >= length_)
        throw std::out_of_range("date " + format_date(date) + " outside grid " +
                                format_date(start_) + ".." + format_date(date_of(length_ - 1)));
    return i;
}

bool WeekGrid::same_anchor(const WeekGrid& other) const {
    return (other.start_ - start_).count() % 7 == 0;
}

WeekGrid make_week_grid(CalendarDate start, std::int64_t n_weeks) {
    return WeekGrid{start, n_weeks};
}

TimeSeries::TimeSeries(WeekGrid grid, std::vector<double> values, bool allow_negative)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::int64_t>(values_.size()) != grid_.length())
        throw std::invalid_argument("value count " + std::to_string(values_.size()) +
                                    " does not match grid length " +
                                    std::to_string(grid_.length()));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        const double v = values_[i];
        if (std::isnan(v))
            continue;  // gap
        if (!std::isfinite(v))
            throw std::invalid_argument("non-finite value at week " + std::to_string(i));
        if (v < 0.0 && !allow_negative)
            throw std::invalid_argument("negative value at week " + std::to_string(i) +
                                        " (signed series not enabled)");
    }
}

bool TimeSeries::present(std::int64_t i) const {
    return !std::isnan(values_[static_cast<std::size_t>(i)]);
}

std::optional<double> TimeSeries::at(std::int64_t i) const {
    if (!present(i))
        return std::nullopt;
    return values_[static_cast<std::size_t>(i)];
}

std::int64_t TimeSeries::present_count() const {
    std::int64_t n = 0;
    for (std::int64_t i = 0; i < length(); ++i)
        if (present(i))
            ++n;
    return n;
}

PairedSample align_or_empty(const TimeSeries& target, const TimeSeries& query, int shift) {
    if (!target.grid().same_anchor(query.grid()))
        throw std::invalid_argument("mismatched grid anchors: " +
                                    format_date(target.grid().start()) + " vs " +
                                    format_date(query.grid().start()));
    const std::int64_t limit = std::max(target.length(), query.length());
    if (std::abs(static_cast<std::int64_t>(shift)) >= limit)
        throw std::invalid_argument("shift " + std::to_string(shift) +
                                    " out of range for series of length " + std::to_string(limit));

    // Week index of target week t inside the query grid, before shifting.
    const std::int64_t offset = (target.grid().start() - query.grid().start()).count() / 7;

    PairedSample sample;
    sample.shift = shift;
    for (std::int64_t t = 0; t < target.length(); ++t) {
        const std::int64_t q = t + offset - shift;
        if (q < 0 || q >= query.length())
            continue;
        if (!target.present(t) || !query.present(q))
            continue;
        sample.xs.push_back(target.value(t));
        sample.ys.push_back(query.value(q));
    }
    return sample;
}

PairedSample align(const TimeSeries& target, const TimeSeries& query, int shift) {
    PairedSample sample = align_or_empty(target, query, shift);
    if (sample.n() == 0)
        throw std::runtime_error("empty overlap between series at shift " + std::to_string(shift));
    return sample;
}

TimeSeries year_window(const TimeSeries& series, int year) {
    const WeekGrid& grid = series.grid();
    std::int64_t first = -1;
    std::int64_t last = -1;
    for (std::int64_t i = 0; i < grid.length(); ++i) {
        if (year_of(grid.date_of(i)) == year) {
            if (first < 0)
                first = i;
            last = i;
        }
    }
    if (first < 0)
        throw std::runtime_error("year " + std::to_string(year) + " outside grid " +
                                 format_date(grid.start()) + ".." +
                                 format_date(grid.date_of(grid.length() - 1)));

    std::vector<double> values(series.raw().begin() + first, series.raw().begin() + last + 1);
    // Negative values may be present when the source series was signed.
    return TimeSeries{WeekGrid{grid.date_of(first), last - first + 1}, std::move(values), true};
}

}  // namespace correlate
