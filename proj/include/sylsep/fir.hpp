#pragma once

// Window functions, windowed-sinc FIR design and zero-phase FIR filtering.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "sylsep/error.hpp"
#include "sylsep/fft.hpp"

namespace sylsep::fir {

/// Periodic Hann window (sums to a constant under hop = n/4 overlap-add).
inline std::vector<double> hann_periodic(std::size_t n) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / static_cast<double>(n));
    return w;
}

/// Symmetric Hamming window.
inline std::vector<double> hamming(std::size_t n) {
    std::vector<double> w(n, 1.0);
    if (n < 2) return w;
    for (std::size_t i = 0; i < n; ++i)
        w[i] = 0.54 - 0.46 * std::cos(2.0 * std::numbers::pi * i / static_cast<double>(n - 1));
    return w;
}

inline double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

/// Kaiser window evaluated at continuous position t in [-half_width, half_width].
inline double kaiser(double t, double half_width, double beta) {
    const double r = t / half_width;
    if (r <= -1.0 || r >= 1.0) return 0.0;
    return std::cyl_bessel_i(0.0, beta * std::sqrt(1.0 - r * r)) / std::cyl_bessel_i(0.0, beta);
}

/// Kaiser beta for a target stopband attenuation in dB.
inline double kaiser_beta(double attenuation_db) {
    if (attenuation_db > 50.0) return 0.1102 * (attenuation_db - 8.7);
    if (attenuation_db >= 21.0)
        return 0.5842 * std::pow(attenuation_db - 21.0, 0.4) + 0.07886 * (attenuation_db - 21.0);
    return 0.0;
}

/// Odd-length linear-phase high-pass: delta minus a Hamming-windowed sinc
/// low-pass normalized to unit DC gain, so the DC response is exactly zero
/// up to rounding. `cutoff` is in cycles per sample (0 < cutoff < 0.5).
inline std::vector<double> highpass_hamming(std::size_t taps, double cutoff) {
    if (taps % 2 == 0) throw ParameterError("high-pass FIR needs an odd tap count");
    if (!(cutoff > 0.0 && cutoff < 0.5)) throw ParameterError("high-pass cutoff must lie in (0, 0.5) cycles/sample");
    const auto window = hamming(taps);
    const auto mid = static_cast<double>(taps / 2);
    std::vector<double> h(taps);
    double dc = 0.0;
    for (std::size_t i = 0; i < taps; ++i) {
        h[i] = 2.0 * cutoff * sinc(2.0 * cutoff * (static_cast<double>(i) - mid)) * window[i];
        dc += h[i];
    }
    for (auto& v : h) v = -v / dc;
    h[taps / 2] += 1.0;
    return h;
}

/// Magnitude of the FIR frequency response at `freq` cycles per sample.
inline double response_magnitude(std::span<const double> h, double freq) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double ph = -2.0 * std::numbers::pi * freq * static_cast<double>(i);
        re += h[i] * std::cos(ph);
        im += h[i] * std::sin(ph);
    }
    return std::hypot(re, im);
}

/// Filters `x` with an odd-length FIR and compensates its group delay:
/// y[n] = sum_k h[k] x[n + mid - k], with x taken as zero outside its range.
/// Output length equals input length. Uses FFT overlap-add.
inline std::vector<double> filter_centered(std::span<const double> x, std::span<const double> h) {
    std::vector<double> y(x.size(), 0.0);
    if (x.empty()) return y;
    if (h.empty() || h.size() % 2 == 0) throw ParameterError("centered FIR filtering needs an odd tap count");
    const std::size_t mid = h.size() / 2;

    std::size_t nfft = 1;
    while (nfft < 4 * h.size()) nfft <<= 1;
    const std::size_t block = nfft - h.size() + 1;

    RealFft fft(nfft);
    std::fill(fft.time().begin(), fft.time().end(), 0.0);
    std::copy(h.begin(), h.end(), fft.time().begin());
    fft.forward();
    const std::vector<std::complex<double>> hspec(fft.spectrum().begin(), fft.spectrum().end());

    // Full convolution index j maps to output index j - mid.
    for (std::size_t start = 0; start < x.size(); start += block) {
        const std::size_t len = std::min(block, x.size() - start);
        auto t = fft.time();
        std::fill(t.begin(), t.end(), 0.0);
        std::copy_n(x.begin() + static_cast<std::ptrdiff_t>(start), len, t.begin());
        fft.forward();
        auto s = fft.spectrum();
        for (std::size_t k = 0; k < s.size(); ++k) s[k] *= hspec[k];
        fft.inverse();
        const std::size_t produced = len + h.size() - 1;
        for (std::size_t j = 0; j < produced; ++j) {
            const std::size_t full = start + j;
            if (full < mid) continue;
            const std::size_t out = full - mid;
            if (out >= y.size()) break;
            y[out] += t[j];
        }
    }
    return y;
}

}  // namespace sylsep::fir
