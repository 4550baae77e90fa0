#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace correlate {

using CalendarDate = std::chrono::sys_days;

/// Parses a strict ISO yyyy-mm-dd date. Throws std::invalid_argument on
/// malformed text or an impossible calendar date.
CalendarDate parse_date(const std::string& text);

std::string format_date(CalendarDate date);

int year_of(CalendarDate date);

/// Whole weeks from `anchor` to `date`. In strict mode the distance must be
/// an exact multiple of 7 days; with `snap` the result is rounded to the
/// nearest week boundary.
std::int64_t weeks_between(CalendarDate anchor, CalendarDate date, bool snap = false);

// Integer-indexed weekly calendar: week i starts at start() + 7*i days.
// Weeks are anchored to the start date's weekday; there is no ISO-week logic.
class WeekGrid {
public:
    WeekGrid(CalendarDate start, std::int64_t length);

    CalendarDate start() const { return start_; }
    std::int64_t length() const { return length_; }
    CalendarDate date_of(std::int64_t index) const;

    /// Maps a date back to its week index. Off-cycle dates are rejected
    /// unless `snap` is set; dates outside [0, length) always throw.
    std::int64_t index_of(CalendarDate date, bool snap = false) const;

    /// True when the two grids tick on the same weekly cycle (start dates a
    /// whole number of weeks apart).
    bool same_anchor(const WeekGrid& other) const;

    friend bool operator==(const WeekGrid&, const WeekGrid&) = default;

private:
    CalendarDate start_;
    std::int64_t length_;
};

WeekGrid make_week_grid(CalendarDate start, std::int64_t n_weeks);

// Week-aligned sequence of optional non-negative values. A gap (missing
// observation) is stored as NaN; present values must be finite. Negative
// values are admitted only when explicitly requested, for ingesting
// already-normalized exports.
class TimeSeries {
public:
    TimeSeries(WeekGrid grid, std::vector<double> values, bool allow_negative = false);

    const WeekGrid& grid() const { return grid_; }
    std::int64_t length() const { return grid_.length(); }
    bool present(std::int64_t i) const;
    double value(std::int64_t i) const { return values_[static_cast<std::size_t>(i)]; }
    std::optional<double> at(std::int64_t i) const;
    const std::vector<double>& raw() const { return values_; }
    std::int64_t present_count() const;

private:
    WeekGrid grid_;
    std::vector<double> values_;
};

// One row of pairwise-complete observations after shifting. xs holds target
// values, ys the query values paired with them; gaps never appear inside.
struct PairedSample {
    std::vector<double> xs;
    std::vector<double> ys;
    int shift = 0;

    std::int64_t n() const { return static_cast<std::int64_t>(xs.size()); }
};

// Pairs target[t] with query[t - shift] wherever both values are present.
// Sign convention: shift +k means the query value precedes the target by k
// weeks (query leads, "proceeding"); shift -k means the query trails
// ("lagging"). Throws on mismatched grid anchors, out-of-range shift, or an
// empty overlap.
PairedSample align(const TimeSeries& target, const TimeSeries& query, int shift);

/// Like align but reports an empty overlap as an empty sample instead of
/// throwing; anchor and shift violations still throw.
PairedSample align_or_empty(const TimeSeries& target, const TimeSeries& query, int shift);

// Sub-series of the weeks whose start date falls inside the given calendar
// year. The result keeps the weekly cycle of the source grid. Throws when
// the year does not intersect the grid.
TimeSeries year_window(const TimeSeries& series, int year);

}  // namespace correlate
