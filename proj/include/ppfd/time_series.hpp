#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ppfd {

// Seconds since the Unix epoch. Calendar logic stays at the ingestion
// boundary; everything downstream indexes by integer position.
using Instant = std::int64_t;
using Duration = std::int64_t;

// Uniformly sampled univariate series. Sample t lives at origin + t*step.
struct TimeSeries {
    Instant origin = 0;
    Duration step = 1;
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    Instant time_at(std::size_t t) const {
        return origin + static_cast<Instant>(t) * step;
    }
};

struct Gap {
    std::size_t start = 0;  // first missing index on the uniform grid
    std::size_t length = 0; // number of consecutive missing slots
};

struct GapReport {
    std::vector<Gap> gaps;

    bool empty() const { return gaps.empty(); }
    std::size_t total_missing() const {
        std::size_t n = 0;
        for (const auto& g : gaps) n += g.length;
        return n;
    }
};

namespace detail {
inline double gap_sentinel() {
    return std::numeric_limits<double>::quiet_NaN();
}
}

// Aligns irregular (timestamp, value) samples onto the uniform grid implied
// by the first timestamp and `step`. Missing grid slots are reported; the
// returned series holds an internal sentinel there until interpolation.
inline std::pair<TimeSeries, GapReport> from_samples(
    const std::vector<Instant>& timestamps,
    const std::vector<double>& values,
    Duration step) {
    if (timestamps.size() != values.size())
        throw std::invalid_argument("from_samples: timestamp/value count mismatch");
    if (timestamps.empty())
        throw std::invalid_argument("from_samples: empty input");
    if (step <= 0)
        throw std::invalid_argument("from_samples: step must be positive");

    const Instant origin = timestamps.front();
    for (std::size_t i = 0; i < timestamps.size(); ++i) {
        if (i > 0 && timestamps[i] <= timestamps[i - 1])
            throw std::invalid_argument(
                "from_samples: timestamps not strictly increasing at " +
                std::to_string(timestamps[i]));
        const Instant off = timestamps[i] - origin;
        if (off % step != 0)
            throw std::invalid_argument(
                "from_samples: off-grid timestamp " + std::to_string(timestamps[i]));
        if (!std::isfinite(values[i]))
            throw std::invalid_argument("from_samples: non-finite value at index " +
                                        std::to_string(i));
    }

    const std::size_t n =
        static_cast<std::size_t>((timestamps.back() - origin) / step) + 1;
    TimeSeries series{origin, step,
                      std::vector<double>(n, detail::gap_sentinel())};
    for (std::size_t i = 0; i < timestamps.size(); ++i)
        series.values[static_cast<std::size_t>((timestamps[i] - origin) / step)] =
            values[i];

    GapReport report;
    std::size_t t = 0;
    while (t < n) {
        if (std::isnan(series.values[t])) {
            std::size_t len = 0;
            while (t + len < n && std::isnan(series.values[t + len])) ++len;
            report.gaps.push_back({t, len});
            t += len;
        } else {
            ++t;
        }
    }
    return {std::move(series), std::move(report)};
}

// Fills each reported gap by a straight line between the nearest known
// neighbours. Interior gaps only; there is no extrapolation.
inline TimeSeries linear_interpolate(const TimeSeries& series,
                                     const GapReport& gaps) {
    TimeSeries out = series;
    const std::size_t n = out.values.size();
    for (const auto& g : gaps.gaps) {
        if (g.length == 0) continue;
        if (g.start == 0)
            throw std::invalid_argument("linear_interpolate: leading gap");
        if (g.start + g.length >= n)
            throw std::invalid_argument("linear_interpolate: trailing gap");
        const std::size_t a = g.start - 1;
        const std::size_t b = g.start + g.length;
        const double va = out.values[a];
        const double vb = out.values[b];
        for (std::size_t t = g.start; t < b; ++t)
            out.values[t] =
                va + static_cast<double>(t - a) * (vb - va) /
                         static_cast<double>(b - a);
    }
    for (double v : out.values)
        if (!std::isfinite(v))
            throw std::invalid_argument("linear_interpolate: unresolved gap remains");
    return out;
}

// Prefix of the series whose timestamps are <= cutoff.
inline TimeSeries truncate_after(const TimeSeries& series, Instant cutoff) {
    if (cutoff < series.origin)
        throw std::invalid_argument("truncate_after: cutoff precedes origin");
    const auto keep = static_cast<std::size_t>(
        (cutoff - series.origin) / series.step) + 1;
    TimeSeries out = series;
    if (keep < out.values.size()) out.values.resize(keep);
    return out;
}

} // namespace ppfd
