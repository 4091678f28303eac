#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ppfd/time_series.hpp"

namespace ppfd {

// Supervised one-step-ahead pairs: inputs[i] is w consecutive observations,
// targets[i] the value that follows them.
struct WindowDataset {
    std::size_t window_size = 0;
    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
};

inline WindowDataset make_windows(const std::vector<double>& values,
                                  std::size_t w) {
    if (w == 0) throw std::invalid_argument("make_windows: window size 0");
    if (values.size() <= w)
        throw std::invalid_argument("make_windows: series no longer than window");
    WindowDataset d;
    d.window_size = w;
    d.inputs.reserve(values.size() - w);
    d.targets.reserve(values.size() - w);
    for (std::size_t t = w; t < values.size(); ++t) {
        d.inputs.emplace_back(values.begin() + static_cast<std::ptrdiff_t>(t - w),
                              values.begin() + static_cast<std::ptrdiff_t>(t));
        d.targets.push_back(values[t]);
    }
    return d;
}

inline WindowDataset make_windows(const TimeSeries& series, std::size_t w) {
    return make_windows(series.values, w);
}

} // namespace ppfd
