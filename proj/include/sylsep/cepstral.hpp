#pragma once

// Mel- and linear-frequency cepstral coefficients (MFCC / LFCC).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "sylsep/audio_clip.hpp"
#include "sylsep/error.hpp"
#include "sylsep/fft.hpp"
#include "sylsep/fir.hpp"
#include "sylsep/frame_matrix.hpp"

namespace sylsep {

enum class FilterScale { mel, linear };

struct CepstralConfig {
    FilterScale kind = FilterScale::mel;
    std::uint32_t fft_size = 400;
    std::uint32_t hop = 320;  // 20 ms at 16 kHz, same frame rate as the encoders
    std::uint32_t num_filters = 26;
    std::uint32_t num_coeffs = 13;
    double fmin_hz = 0.0;
    double fmax_hz = 8000.0;
    double log_floor = 1e-10;
    double pre_emphasis = 0.0;
    bool include_c0 = true;  // false keeps coefficients 1..num_coeffs instead
};

/// HTK mel scale.
inline double hz_to_mel(double f_hz) { return 2595.0 * std::log10(1.0 + f_hz / 700.0); }
inline double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

/// Triangular filterbank on the scale selected by `kind`: num_filters + 2
/// equally spaced edge points over [fmin, fmax]. Each triangle is 1 at its
/// centre frequency and 0 at and beyond its neighbours' centres.
class Filterbank {
public:
    Filterbank(FilterScale kind, std::uint32_t num_filters, double fmin_hz, double fmax_hz)
        : kind_(kind), edges_(num_filters + 2) {
        if (num_filters == 0) throw ParameterError("filterbank needs at least one filter");
        if (!(fmin_hz >= 0.0) || !(fmax_hz > fmin_hz)) throw ParameterError("filterbank needs 0 <= fmin < fmax");
        const double lo = to_scale(fmin_hz), hi = to_scale(fmax_hz);
        for (std::size_t i = 0; i < edges_.size(); ++i)
            edges_[i] = from_scale(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(num_filters + 1));
    }

    [[nodiscard]] std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(edges_.size() - 2); }
    [[nodiscard]] double center_hz(std::uint32_t m) const { return edges_[m + 1]; }

    [[nodiscard]] double weight(std::uint32_t m, double f_hz) const {
        const double l = edges_[m], c = edges_[m + 1], r = edges_[m + 2];
        if (f_hz <= l || f_hz >= r) return 0.0;
        return f_hz <= c ? (f_hz - l) / (c - l) : (r - f_hz) / (r - c);
    }

    /// Weights sampled at the FFT bin frequencies; row-major num_filters x bins.
    [[nodiscard]] std::vector<double> matrix(std::uint32_t fft_size, double sample_rate_hz) const {
        const std::size_t bins = fft_size / 2 + 1;
        std::vector<double> w(size() * bins);
        for (std::uint32_t m = 0; m < size(); ++m)
            for (std::size_t k = 0; k < bins; ++k) w[m * bins + k] = weight(m, k * sample_rate_hz / fft_size);
        return w;
    }

private:
    [[nodiscard]] double to_scale(double f) const { return kind_ == FilterScale::mel ? hz_to_mel(f) : f; }
    [[nodiscard]] double from_scale(double s) const { return kind_ == FilterScale::mel ? mel_to_hz(s) : s; }

    FilterScale kind_;
    std::vector<double> edges_;
};

/// Orthonormal DCT-II basis, row-major num_coeffs x n: row k is
/// s_k cos(pi k (2i + 1) / 2n) with s_0 = sqrt(1/n), s_k = sqrt(2/n).
inline std::vector<double> dct2_orthonormal(std::uint32_t num_coeffs, std::uint32_t n, std::uint32_t first = 0) {
    std::vector<double> basis(static_cast<std::size_t>(num_coeffs) * n);
    for (std::uint32_t r = 0; r < num_coeffs; ++r) {
        const std::uint32_t k = r + first;
        const double s = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
        for (std::uint32_t i = 0; i < n; ++i)
            basis[r * n + i] = s * std::cos(std::numbers::pi * k * (2.0 * i + 1.0) / (2.0 * n));
    }
    return basis;
}

inline void validate(const CepstralConfig& cfg, std::uint32_t sample_rate_hz) {
    if (cfg.fft_size < 2 || cfg.hop == 0) throw ParameterError("cepstral: fft size and hop must be positive");
    if (cfg.num_filters == 0 || cfg.num_coeffs == 0) throw ParameterError("cepstral: filter and coefficient counts must be positive");
    const std::uint32_t needed = cfg.include_c0 ? cfg.num_coeffs : cfg.num_coeffs + 1;
    if (needed > cfg.num_filters) throw ParameterError("cepstral: num_coeffs must not exceed num_filters");
    if (!(cfg.fmin_hz >= 0.0) || !(cfg.fmax_hz > cfg.fmin_hz)) throw ParameterError("cepstral: need 0 <= fmin < fmax");
    if (2.0 * cfg.fmax_hz > sample_rate_hz)
        throw ParameterError("cepstral: fmax " + std::to_string(cfg.fmax_hz) + " Hz exceeds Nyquist of " +
                             std::to_string(sample_rate_hz) + " Hz audio");
    if (!(cfg.log_floor > 0.0)) throw ParameterError("cepstral: log floor must be positive");
}

/// Frame count for a clip of n samples: floor((n - fft) / hop) + 1.
inline std::uint64_t cepstral_frame_count(std::size_t n, const CepstralConfig& cfg) {
    if (n < cfg.fft_size) return 0;
    return (n - cfg.fft_size) / cfg.hop + 1;
}

/// Hann-windowed power spectrum -> triangular filterbank -> log (floored) ->
/// orthonormal DCT-II. Frame t covers samples [t*hop, t*hop + fft_size).
template <typename Scalar = float>
BasicFrameMatrix<Scalar> cepstral_features(const AudioClip& clip, const CepstralConfig& cfg) {
    validate(clip);
    validate(cfg, clip.sample_rate_hz);
    if (clip.samples.size() < cfg.fft_size)
        throw ParameterError("insufficient samples: clip has " + std::to_string(clip.samples.size()) +
                             " samples, fft window needs " + std::to_string(cfg.fft_size));

    std::vector<double> x(clip.samples.begin(), clip.samples.end());
    if (cfg.pre_emphasis != 0.0) {
        for (std::size_t i = x.size(); i-- > 1;) x[i] -= cfg.pre_emphasis * x[i - 1];
    }

    const std::uint32_t n = cfg.fft_size;
    const std::size_t bins = n / 2 + 1;
    const auto window = fir::hann_periodic(n);
    const Filterbank bank(cfg.kind, cfg.num_filters, cfg.fmin_hz, cfg.fmax_hz);
    const auto weights = bank.matrix(n, clip.sample_rate_hz);
    const auto dct = dct2_orthonormal(cfg.num_coeffs, cfg.num_filters, cfg.include_c0 ? 0 : 1);

    const std::uint64_t frames = cepstral_frame_count(x.size(), cfg);
    BasicFrameMatrix<Scalar> fm(cfg.num_coeffs, frames, static_cast<double>(cfg.hop) / clip.sample_rate_hz,
                   (n / 2.0) / clip.sample_rate_hz);

    RealFft fft(n);
    std::vector<double> power(bins), log_energy(cfg.num_filters);
    for (std::uint64_t t = 0; t < frames; ++t) {
        auto buf = fft.time();
        const std::size_t start = t * cfg.hop;
        for (std::uint32_t i = 0; i < n; ++i) buf[i] = window[i] * x[start + i];
        fft.forward();
        const auto spec = fft.spectrum();
        for (std::size_t k = 0; k < bins; ++k) power[k] = std::norm(spec[k]);
        for (std::uint32_t m = 0; m < cfg.num_filters; ++m) {
            double e = 0.0;
            const double* w = &weights[m * bins];
            for (std::size_t k = 0; k < bins; ++k) e += w[k] * power[k];
            log_energy[m] = std::log(std::max(e, cfg.log_floor));
        }
        auto out = fm.row(t);
        for (std::uint32_t c = 0; c < cfg.num_coeffs; ++c) {
            double v = 0.0;
            for (std::uint32_t m = 0; m < cfg.num_filters; ++m) v += dct[c * cfg.num_filters + m] * log_energy[m];
            out[c] = static_cast<Scalar>(v);
        }
    }
    return fm;
}

}  // namespace sylsep
