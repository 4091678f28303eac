#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ppfd/time_series.hpp"

namespace ppfd {

// Constants of the three-stage normalization applied to the deseasonalized
// series: min-max into [1,2], per-step relative change, then max-abs into
// [-1,1]. Holds everything needed to run the pipeline forward on new
// observations and to invert a forecast exactly.
struct ScalingState {
    double x_min = 0.0;
    double x_max = 0.0;
    double l_max_abs = 0.0;
    double s_prev = 0.0;   // scaled value of the most recent observation

    double range() const { return x_max - x_min; }
};

namespace detail {
inline double scale_to_band(double x, const ScalingState& st) {
    return (x - st.x_min) / st.range() + 1.0;
}
}

// Fits the pipeline on a training series and returns the normalized series y.
// The first observation is consumed by the relative-change step, so y has
// length N-1. Training outputs satisfy s in [1,2] and y in [-1,1].
inline std::pair<TimeSeries, ScalingState> fit_forward(
    const TimeSeries& series) {
    const std::size_t n = series.size();
    if (n < 2) throw std::invalid_argument("fit_forward: need at least 2 points");

    ScalingState st;
    st.x_min = series.values[0];
    st.x_max = series.values[0];
    for (double v : series.values) {
        st.x_min = std::min(st.x_min, v);
        st.x_max = std::max(st.x_max, v);
    }
    const double magnitude =
        std::max({std::abs(st.x_min), std::abs(st.x_max), 1e-300});
    if (!(st.x_max - st.x_min > 1e-9 * magnitude))
        throw std::invalid_argument("fit_forward: zero range (constant series)");

    std::vector<double> l(n - 1);
    double s_prev = detail::scale_to_band(series.values[0], st);
    for (std::size_t t = 1; t < n; ++t) {
        const double s = detail::scale_to_band(series.values[t], st);
        l[t - 1] = (s - s_prev) / s_prev;
        s_prev = s;
    }
    st.s_prev = s_prev;

    st.l_max_abs = 0.0;
    for (double v : l) st.l_max_abs = std::max(st.l_max_abs, std::abs(v));
    if (st.l_max_abs <= 0.0)
        throw std::invalid_argument("fit_forward: series is constant after scaling");

    TimeSeries y{series.origin + series.step, series.step, std::move(l)};
    for (auto& v : y.values) v /= st.l_max_abs;
    return {std::move(y), st};
}

// Pushes one new observation through the frozen pipeline, returning its y
// and advancing s_prev. Out-of-training-range values leave the [1,2] band;
// the formulas still apply.
inline double apply_forward(double value, ScalingState& state) {
    const double s = detail::scale_to_band(value, state);
    const double l = (s - state.s_prev) / state.s_prev;
    state.s_prev = s;
    return l / state.l_max_abs;
}

// Maps a forecast y back to source units, in the opposite order of the
// forward pipeline. Does not advance s_prev: the forecast is hypothetical
// and only an observed value moves the state.
inline double invert_step(double y_next, const ScalingState& state) {
    if (state.s_prev <= 0.0)
        throw std::invalid_argument("invert_step: non-positive s_prev");
    const double l = y_next * state.l_max_abs;
    const double s_next = state.s_prev * (1.0 + l);
    return (s_next - 1.0) * state.range() + state.x_min;
}

} // namespace ppfd
