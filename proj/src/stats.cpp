#include "correlate/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace correlate {

std::vector<double> zscore(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 2)
        throw std::invalid_argument("zscore needs at least 2 values");

    double mean = 0.0;
    for (double v : values)
        mean += v;
    mean /= static_cast<double>(n);

    double ss = 0.0;
    for (double v : values)
        ss += (v - mean) * (v - mean);
    if (ss == 0.0)
        throw std::invalid_argument("zscore of a zero-variance series");

    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = (values[i] - mean) / sd;
    return out;
}

namespace detail {

CorrelationEstimate pearson_core(std::span<const double> xs, std::span<const double> ys,
                                 int shift) {
    CorrelationEstimate est;
    est.shift = shift;
    est.n = static_cast<std::int64_t>(xs.size());
    if (est.n < 2)
        return est;

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(est.n);
    my /= static_cast<double>(est.n);

    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        return est;  // NA: zero variance on one side

    double r = sxy / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);  // rounding can overshoot by ~1e-16

    est.r = r;
    est.defined = true;
    if (est.n >= 3)
        est.p = p_value(r, est.n);
    return est;
}

}  // namespace detail

CorrelationEstimate pearson(const PairedSample& sample) {
    return detail::pearson_core(sample.xs, sample.ys, sample.shift);
}

double p_value(double r, std::int64_t n) {
    if (std::abs(r) > 1.0)
        throw std::invalid_argument("correlation out of range: " + std::to_string(r));
    if (n < 3)
        throw std::invalid_argument("p_value needs n >= 3, got " + std::to_string(n));

    const double df = static_cast<double>(n - 2);
    const double denom = 1.0 - r * r;
    if (denom <= 0.0)
        return 0.0;  // |r| == 1: the t statistic diverges
    const double t2 = r * r * df / denom;
    // Two-sided tail of the t distribution: P(|T| >= t) = I_{df/(df+t^2)}(df/2, 1/2).
    return incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete_beta requires a > 0 and b > 0");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("incomplete_beta requires 0 <= x <= 1");
    if (x == 0.0)
        return 0.0;
    if (x == 1.0)
        return 1.0;

    // The continued fraction converges fast for x < (a+1)/(a+b+2); use the
    // symmetry I_x(a,b) = 1 - I_{1-x}(b,a) on the other side.
    if (x > (a + 1.0) / (a + b + 2.0))
        return 1.0 - incomplete_beta(b, a, 1.0 - x);

    const double log_front =
        a * std::log(x) + b * std::log1p(-x) - (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));

    // Lentz's algorithm on the standard continued fraction.
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;
    double c = 1.0;
    double d = 1.0;
    double f = 1.0;
    {
        const double a0 = -(a + b) * x / (a + 1.0);
        d = 1.0 + a0;
        if (std::abs(d) < kTiny)
            d = kTiny;
        d = 1.0 / d;
        f = d;
    }
    for (int m = 1; m <= 300; ++m) {
        const double dm = static_cast<double>(m);
        // even term
        double num = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
        d = 1.0 + num * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + num / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        f *= c * d;
        // odd term
        num = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
        d = 1.0 + num * d;
        if (std::abs(d) < kTiny)
            d = kTiny;
        c = 1.0 + num / c;
        if (std::abs(c) < kTiny)
            c = kTiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < kEps)
            break;
    }
    return std::exp(log_front) * f / a;
}

std::optional<int> best_shift_of(const std::map<int, CorrelationEstimate>& estimates) {
    std::optional<int> best;
    for (const auto& [shift, est] : estimates) {
        if (!est.defined)
            continue;
        if (!best) {
            best = shift;
            continue;
        }
        const CorrelationEstimate& cur = estimates.at(*best);
        if (est.r > cur.r ||
            (est.r == cur.r && (std::abs(shift) < std::abs(*best) ||
                                (std::abs(shift) == std::abs(*best) && shift < *best))))
            best = shift;
    }
    return best;
}

std::optional<int> best_year_of(const std::map<int, CorrelationEstimate>& by_year) {
    std::optional<int> best;
    for (const auto& [year, est] : by_year) {
        if (!est.defined)
            continue;
        if (!best || est.r > by_year.at(*best).r)
            best = year;  // map order makes ties resolve to the earliest year
    }
    return best;
}

LagRow lag_scan(const TimeSeries& target, const TimeSeries& query, std::span<const int> shifts,
                std::string query_name) {
    if (shifts.empty())
        throw std::invalid_argument("lag_scan needs at least one shift");

    LagRow row;
    row.query = std::move(query_name);
    bool any_overlap = false;
    for (int shift : shifts) {
        const PairedSample sample = align_or_empty(target, query, shift);
        if (sample.n() > 0)
            any_overlap = true;
        CorrelationEstimate est = pearson(sample);
        est.shift = shift;
        row.estimates[shift] = est;
    }
    if (!any_overlap)
        throw std::runtime_error("empty overlap at every requested shift");
    row.best_shift = best_shift_of(row.estimates);
    return row;
}

YearlyRow yearly_scan(const TimeSeries& target, const TimeSeries& query,
                      std::span<const int> years, std::string query_name) {
    if (years.empty())
        throw std::invalid_argument("yearly_scan needs at least one year");

    YearlyRow row;
    row.query = std::move(query_name);
    for (int year : years) {
        CorrelationEstimate est;
        try {
            const TimeSeries t = year_window(target, year);
            const TimeSeries q = year_window(query, year);
            est = pearson(align_or_empty(t, q, 0));
        } catch (const std::runtime_error&) {
            // year outside one of the grids: stays NA
        }
        est.shift = 0;
        row.by_year[year] = est;
    }
    row.best_year = best_year_of(row.by_year);
    return row;
}

std::map<int, double> average_yearly(const std::vector<YearlyRow>& rows) {
    if (rows.empty())
        throw std::invalid_argument("average_yearly needs at least one row");

    std::map<int, std::pair<double, std::int64_t>> sums;
    for (const YearlyRow& row : rows) {
        for (const auto& [year, est] : row.by_year) {
            if (!est.defined)
                continue;
            auto& [sum, count] = sums[year];
            sum += est.r;
            ++count;
        }
    }
    std::map<int, double> means;
    for (const auto& [year, sc] : sums)
        means[year] = sc.first / static_cast<double>(sc.second);
    return means;
}

}  // namespace correlate
