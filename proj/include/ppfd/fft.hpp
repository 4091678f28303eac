#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace ppfd::fft {

using Complex = std::complex<double>;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

namespace detail {

// Iterative radix-2 Cooley-Tukey, in place. sign = -1 forward, +1 inverse
// (unscaled). Twiddles come straight from polar() so error does not
// accumulate along the butterfly chain.
inline void radix2(std::vector<Complex>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double base = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        for (std::size_t k = 0; k < len / 2; ++k) {
            const Complex w = std::polar(1.0, base * static_cast<double>(k));
            for (std::size_t i = 0; i < n; i += len) {
                const Complex u = a[i + k];
                const Complex v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

// Bluestein's chirp-z algorithm: an exact length-n DFT expressed as a
// convolution, carried out by two power-of-two FFTs. Handles any n without
// zero-padding the spectrum itself, so bin frequencies stay at k/n.
inline std::vector<Complex> bluestein(const std::vector<Complex>& x, int sign) {
    const std::size_t n = x.size();
    std::size_t m = 1;
    while (m < 2 * n - 1) m <<= 1;

    // chirp[k] = exp(sign * i*pi*k^2/n); k^2 mod 2n keeps the argument small.
    std::vector<Complex> chirp(n);
    for (std::size_t k = 0; k < n; ++k) {
        const auto k2 = static_cast<double>((k * k) % (2 * n));
        chirp[k] = std::polar(1.0, sign * std::numbers::pi * k2 /
                                       static_cast<double>(n));
    }

    std::vector<Complex> a(m, Complex{0.0, 0.0});
    std::vector<Complex> b(m, Complex{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
    b[0] = std::conj(chirp[0]);
    for (std::size_t k = 1; k < n; ++k)
        b[k] = b[m - k] = std::conj(chirp[k]);

    radix2(a, -1);
    radix2(b, -1);
    for (std::size_t i = 0; i < m; ++i) a[i] *= b[i];
    radix2(a, +1);

    std::vector<Complex> out(n);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k] * scale;
    return out;
}

} // namespace detail

// Unnormalized DFT of arbitrary length: out[k] = sum_t x[t] exp(sign*2pi*i*k*t/n).
// sign = -1 is the forward transform; the inverse caller divides by n.
inline std::vector<Complex> transform(std::vector<Complex> x, int sign) {
    if (x.empty()) throw std::invalid_argument("fft: empty input");
    if (x.size() == 1) return x;
    if (is_power_of_two(x.size())) {
        detail::radix2(x, sign);
        return x;
    }
    return detail::bluestein(x, sign);
}

} // namespace ppfd::fft
