#pragma once

#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "correlate/series.hpp"

namespace correlate {

// Result of one query/target pairing. `defined` is false (an NA result,
// not an error) when the aligned sample is too small or either side has
// zero variance; r is NaN in that case. p is absent whenever n < 3.
struct CorrelationEstimate {
    double r = std::numeric_limits<double>::quiet_NaN();
    std::int64_t n = 0;
    std::optional<double> p;
    int shift = 0;
    bool defined = false;
};

// Lag sweep over one query. best_shift maximizes r among defined estimates;
// ties go to the smallest |shift|, then the smaller signed shift. Absent
// when no shift produced a defined estimate.
struct LagRow {
    std::string query;
    std::map<int, CorrelationEstimate> estimates;
    std::optional<int> best_shift;
};

// Calendar-year sweep over one query at zero shift. NA years never win
// best_year; ties go to the earliest year.
struct YearlyRow {
    std::string query;
    std::map<int, CorrelationEstimate> by_year;
    std::optional<int> best_year;
};

inline constexpr int kDefaultShifts[] = {-1, 0, 1, 2};
inline constexpr int kDefaultYears[] = {2009, 2010, 2011, 2012, 2013};

/// Rescales to mean 0 and sample (n-1) standard deviation 1. Throws on
/// inputs shorter than 2 or with zero variance.
std::vector<double> zscore(std::span<const double> values);

/// Pearson r with two-sided significance. Degenerate samples yield an NA
/// estimate rather than an error.
CorrelationEstimate pearson(const PairedSample& sample);

/// Two-sided p for the null r = 0 via t = r*sqrt((n-2)/(1-r^2)) with n-2
/// degrees of freedom. Requires |r| <= 1 and n >= 3.
double p_value(double r, std::int64_t n);

/// Regularized incomplete beta I_x(a, b), the numeric kernel behind the
/// t-distribution tail. Requires a > 0, b > 0, 0 <= x <= 1.
double incomplete_beta(double a, double b, double x);

/// One estimate per shift via align + pearson. Shifts whose overlap is empty
/// come back NA; throws only if every shift has an empty overlap.
LagRow lag_scan(const TimeSeries& target, const TimeSeries& query, std::span<const int> shifts,
                std::string query_name = {});

/// Zero-shift correlation inside each calendar-year window. Years outside
/// the grid or with degenerate windows come back NA; an all-NA row is valid.
YearlyRow yearly_scan(const TimeSeries& target, const TimeSeries& query,
                      std::span<const int> years, std::string query_name = {});

/// Per-year arithmetic mean of the defined r values across rows. Years with
/// no defined value anywhere are omitted.
std::map<int, double> average_yearly(const std::vector<YearlyRow>& rows);

std::optional<int> best_shift_of(const std::map<int, CorrelationEstimate>& estimates);
std::optional<int> best_year_of(const std::map<int, CorrelationEstimate>& by_year);

namespace detail {
/// Centered two-pass Pearson core over gap-free spans of equal length.
CorrelationEstimate pearson_core(std::span<const double> xs, std::span<const double> ys,
                                 int shift);
}  // namespace detail

}  // namespace correlate
