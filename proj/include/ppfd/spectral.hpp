#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "ppfd/fft.hpp"
#include "ppfd/time_series.hpp"

namespace ppfd {

// Complex DFT coefficients of a real series. Conjugate symmetry
// coeffs[k] == conj(coeffs[n-k]) holds for real input.
struct Spectrum {
    std::vector<fft::Complex> coeffs;
    std::size_t n = 0;        // sample count of the source series
    Instant origin = 0;       // grid of the source series
    Duration step = 1;
};

// One extracted seasonal component in cosine form
//   x(t) = amplitude * cos(2*pi*frequency*t + phase),
// t counted on the same index grid the spectrum was taken from.
struct Sinusoid {
    std::size_t bin = 0;      // DFT bin index, 1 <= bin <= n/2
    double frequency = 0.0;   // cycles per sample, bin/n
    double amplitude = 0.0;
    double phase = 0.0;       // radians in (-pi, pi]
};

inline Spectrum dft(const TimeSeries& series) {
    if (series.size() < 2)
        throw std::invalid_argument("dft: need at least 2 samples");
    for (double v : series.values)
        if (!std::isfinite(v)) throw std::invalid_argument("dft: non-finite value");
    std::vector<fft::Complex> x(series.size());
    for (std::size_t t = 0; t < series.size(); ++t) x[t] = series.values[t];
    return Spectrum{fft::transform(std::move(x), -1), series.size(),
                    series.origin, series.step};
}

inline TimeSeries idft(const Spectrum& spectrum) {
    if (spectrum.coeffs.size() != spectrum.n || spectrum.n == 0)
        throw std::invalid_argument("idft: malformed spectrum");
    auto x = fft::transform(spectrum.coeffs, +1);
    const double inv_n = 1.0 / static_cast<double>(spectrum.n);
    double max_abs = 0.0, max_imag = 0.0;
    TimeSeries out{spectrum.origin, spectrum.step,
                   std::vector<double>(spectrum.n)};
    for (std::size_t t = 0; t < spectrum.n; ++t) {
        const auto v = x[t] * inv_n;
        out.values[t] = v.real();
        max_abs = std::max(max_abs, std::abs(v.real()));
        max_imag = std::max(max_imag, std::abs(v.imag()));
    }
    if (max_imag > 1e-8 * std::max(max_abs, 1.0))
        throw std::invalid_argument("idft: spectrum is not conjugate-symmetric");
    return out;
}

// Amplitude of bin k in source-value units. The conjugate bin's energy is
// folded in, except at the Nyquist bin of an even-length transform.
inline double bin_amplitude(const Spectrum& s, std::size_t k) {
    const double mag = std::abs(s.coeffs[k]) / static_cast<double>(s.n);
    return (2 * k == s.n) ? mag : 2.0 * mag;
}

// The c largest-amplitude sinusoids over bins 1..floor(n/2), descending;
// amplitude ties go to the lower bin (longer period). Bin 0 is never a
// seasonal component.
inline std::vector<Sinusoid> top_components(const Spectrum& spectrum,
                                            std::size_t c) {
    const std::size_t half = spectrum.n / 2;
    if (c < 1 || c > half)
        throw std::invalid_argument("top_components: c out of range 1..n/2");

    std::vector<std::size_t> bins(half);
    for (std::size_t i = 0; i < half; ++i) bins[i] = i + 1;
    std::stable_sort(bins.begin(), bins.end(),
                     [&](std::size_t a, std::size_t b) {
                         const double aa = bin_amplitude(spectrum, a);
                         const double ab = bin_amplitude(spectrum, b);
                         if (aa != ab) return aa > ab;
                         return a < b;
                     });

    std::vector<Sinusoid> out;
    out.reserve(c);
    for (std::size_t i = 0; i < c; ++i) {
        const std::size_t k = bins[i];
        out.push_back(Sinusoid{
            k, static_cast<double>(k) / static_cast<double>(spectrum.n),
            bin_amplitude(spectrum, k), std::arg(spectrum.coeffs[k])});
    }
    return out;
}

inline double sinusoid_value(const Sinusoid& s, double t) {
    return s.amplitude *
           std::cos(2.0 * std::numbers::pi * s.frequency * t + s.phase);
}

// Samples the fitted cosine over [t_start, t_end]; indices continue the
// training grid, so extrapolation is just evaluation past n-1.
inline std::vector<double> sinusoid_series(const Sinusoid& s,
                                           std::size_t t_start,
                                           std::size_t t_end) {
    if (t_start > t_end)
        throw std::invalid_argument("sinusoid_series: t_start > t_end");
    std::vector<double> out(t_end - t_start + 1);
    for (std::size_t t = t_start; t <= t_end; ++t)
        out[t - t_start] = sinusoid_value(s, static_cast<double>(t));
    return out;
}

// Zeroes each sinusoid's bin together with its conjugate bin, keeping the
// spectrum conjugate-symmetric. Bin 0 is off limits.
inline Spectrum remove_components(const Spectrum& spectrum,
                                  const std::vector<Sinusoid>& sinusoids) {
    Spectrum out = spectrum;
    for (const auto& s : sinusoids) {
        if (s.bin == 0)
            throw std::invalid_argument("remove_components: cannot remove bin 0");
        if (s.bin > spectrum.n / 2)
            throw std::invalid_argument("remove_components: bin out of range");
        out.coeffs[s.bin] = 0.0;
        out.coeffs[spectrum.n - s.bin] = 0.0; // same index at Nyquist
    }
    return out;
}

} // namespace ppfd
