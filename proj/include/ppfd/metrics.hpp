#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "ppfd/peaks.hpp"

namespace ppfd {

struct MetricReport {
    double rmse = 0.0;
    double rwse = 0.0;
    double peak_rmse = 0.0;
    double peak_rwse = 0.0;
    std::size_t under_predicted = 0;
    std::size_t over_predicted = 0;
    std::size_t n_total = 0;
    std::size_t n_peaks = 0;
    double alpha = 0.0;
};

inline double mse(const std::vector<double>& actual,
                  const std::vector<double>& forecast) {
    if (actual.size() != forecast.size() || actual.empty())
        throw std::invalid_argument("mse: length mismatch or empty input");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = forecast[i] - actual[i];
        acc += e * e;
    }
    return acc / static_cast<double>(actual.size());
}

// Squared error with over-predictions (forecast >= actual, ties included)
// down-weighted by alpha; under-predictions keep full weight.
inline double wse(const std::vector<double>& actual,
                  const std::vector<double>& forecast, double alpha) {
    if (actual.size() != forecast.size() || actual.empty())
        throw std::invalid_argument("wse: length mismatch or empty input");
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw std::invalid_argument("wse: alpha outside [0,1]");
    double acc = 0.0;
    for (std::size_t i = 0; i < actual.size(); ++i) {
        const double e = forecast[i] - actual[i];
        acc += (e >= 0.0 ? alpha : 1.0) * e * e;
    }
    return acc / static_cast<double>(actual.size());
}

// Full evaluation of one validation fold. Errors are computed in a common
// unit-free space: both series are shifted/scaled by the actual series' own
// min/max into [0,1] before the error sums. Under/over peak counts compare
// the raw values; the affine map preserves the comparison either way.
inline MetricReport report(const std::vector<double>& actual,
                           const std::vector<double>& forecast,
                           const PeakSet& peaks, double alpha) {
    if (actual.size() != forecast.size() || actual.empty())
        throw std::invalid_argument("report: length mismatch or empty input");
    for (std::size_t p : peaks.indices)
        if (p >= actual.size())
            throw std::invalid_argument("report: peak index out of range");

    double lo = actual[0], hi = actual[0];
    for (double v : actual) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    const double scale = (hi > lo) ? 1.0 / (hi - lo) : 1.0;
    auto norm = [&](double v) { return (v - lo) * scale; };

    std::vector<double> na(actual.size()), nf(actual.size());
    for (std::size_t i = 0; i < actual.size(); ++i) {
        na[i] = norm(actual[i]);
        nf[i] = norm(forecast[i]);
    }

    MetricReport r;
    r.alpha = alpha;
    r.n_total = actual.size();
    r.n_peaks = peaks.count();
    r.rmse = std::sqrt(mse(na, nf));
    r.rwse = std::sqrt(wse(na, nf, alpha));

    if (r.n_peaks > 0) {
        std::vector<double> pa, pf;
        pa.reserve(r.n_peaks);
        pf.reserve(r.n_peaks);
        for (std::size_t p : peaks.indices) {
            pa.push_back(na[p]);
            pf.push_back(nf[p]);
            if (forecast[p] < actual[p])
                ++r.under_predicted;
            else
                ++r.over_predicted; // sign convention: ties count as over
        }
        r.peak_rmse = std::sqrt(mse(pa, pf));
        r.peak_rwse = std::sqrt(wse(pa, pf, alpha));
    }
    return r;
}

} // namespace ppfd
