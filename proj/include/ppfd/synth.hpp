#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ppfd/time_series.hpp"

namespace ppfd {

// Noise-free benchmark series: a linear trend plus three sine seasonalities
// at weekly, monthly and yearly periods, sampled daily.
struct SynthSpec {
    std::size_t n = 7500;
    double slope = 100000.0;
    double intercept = 1e9;
    std::vector<std::pair<double, double>> components = {
        {7.0, 8e7}, {30.0, 7.2e7}, {365.0, 5.6e7}}; // (period, amplitude)
    Duration step = 86400;
};

inline TimeSeries generate(const SynthSpec& spec) {
    if (spec.n < 2) throw std::invalid_argument("generate: n < 2");
    for (const auto& [period, amplitude] : spec.components) {
        if (period <= 1.0) throw std::invalid_argument("generate: period <= 1");
        if (amplitude < 0.0) throw std::invalid_argument("generate: negative amplitude");
    }
    TimeSeries out{0, spec.step, std::vector<double>(spec.n)};
    for (std::size_t t = 0; t < spec.n; ++t) {
        double v = spec.slope * static_cast<double>(t) + spec.intercept;
        for (const auto& [period, amplitude] : spec.components)
            v += amplitude *
                 std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period);
        out.values[t] = v;
    }
    return out;
}

} // namespace ppfd
