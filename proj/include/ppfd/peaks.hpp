#pragma once

#include <cstddef>
#include <vector>

#include "ppfd/time_series.hpp"

namespace ppfd {

struct PeakSet {
    std::vector<std::size_t> indices; // strictly increasing, interior only

    std::size_t count() const { return indices.size(); }
};

// Plateau-aware local maxima with no height/prominence/distance filtering.
// An index is a peak when the value rises into it and strictly falls after
// any run of equal values; a plateau reports its left-biased midpoint.
// Endpoints are never peaks.
inline PeakSet find_peaks(const std::vector<double>& values) {
    PeakSet peaks;
    const std::size_t n = values.size();
    if (n < 3) return peaks;
    std::size_t i = 1;
    const std::size_t last = n - 1;
    while (i < last) {
        if (values[i - 1] < values[i]) {
            std::size_t ahead = i + 1;
            while (ahead < last && values[ahead] == values[i]) ++ahead;
            if (values[ahead] < values[i]) {
                const std::size_t left = i;
                const std::size_t right = ahead - 1;
                peaks.indices.push_back((left + right) / 2);
                i = ahead;
                continue;
            }
            i = ahead;
            continue;
        }
        ++i;
    }
    return peaks;
}

inline PeakSet find_peaks(const TimeSeries& series) {
    return find_peaks(series.values);
}

} // namespace ppfd
