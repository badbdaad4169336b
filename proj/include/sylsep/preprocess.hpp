#pragma once

// Preprocessing chain for ultrasonic recordings: spectral noise gate,
// high-pass, slow-down by sample-rate relabeling, resampling to the encoder
// rate.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "sylsep/audio_clip.hpp"
#include "sylsep/error.hpp"
#include "sylsep/fft.hpp"
#include "sylsep/fir.hpp"
#include "sylsep/resample.hpp"

namespace sylsep {

struct PreprocessConfig {
    double noise_threshold_db = -65.0;
    double noise_reduction_db = 90.0;
    double highpass_cutoff_hz = 10000.0;  // on the original (un-stretched) timeline
    std::uint32_t stretch_factor = 8;
    std::uint32_t target_rate_hz = 16000;
};

inline void validate(const PreprocessConfig& cfg) {
    if (!(cfg.noise_threshold_db >= -120.0 && cfg.noise_threshold_db <= 0.0))
        throw ParameterError("noise threshold must lie in [-120, 0] dBFS");
    if (!(cfg.noise_reduction_db >= 0.0) || !std::isfinite(cfg.noise_reduction_db))
        throw ParameterError("noise reduction must be a nonnegative number of dB");
    if (!(cfg.highpass_cutoff_hz > 0.0) || !std::isfinite(cfg.highpass_cutoff_hz))
        throw ParameterError("high-pass cutoff must be positive");
    if (cfg.stretch_factor < 1) throw ParameterError("stretch factor must be at least 1");
    if (cfg.target_rate_hz < 8000) throw ParameterError("target rate must be at least 8000 Hz");
}

inline constexpr std::size_t kGateWindow = 1024;
inline constexpr std::size_t kGateHop = 256;
inline constexpr std::size_t kHighpassTaps = 513;

struct NoiseGateResult {
    AudioClip clip;
    bool skipped = false;  // clip shorter than one STFT window; returned unchanged
};

/// STFT binary gate. Bins whose window-normalized magnitude (a full-scale
/// sine reads 0 dBFS at its peak bin) is below threshold_db are scaled by
/// 10^(-reduction_db/20). Periodic Hann analysis, 1024/256, plain overlap-add
/// divided by the window sum.
inline NoiseGateResult noise_gate(const AudioClip& clip, double threshold_db, double reduction_db) {
    validate(clip);
    if (clip.samples.size() < kGateWindow) return {clip, true};

    const std::size_t n = kGateWindow;
    const auto window = fir::hann_periodic(n);
    double window_sum = 0.0;
    for (double w : window) window_sum += w;
    const double level_scale = 2.0 / window_sum;
    const double threshold = std::pow(10.0, threshold_db / 20.0);
    const double attenuation = std::pow(10.0, -reduction_db / 20.0);

    const auto len = static_cast<std::ptrdiff_t>(clip.samples.size());
    std::vector<double> acc(clip.samples.size(), 0.0);
    std::vector<double> norm(clip.samples.size(), 0.0);

    RealFft fft(n);
    // Frames start early enough that every sample is covered by n/hop frames.
    for (std::ptrdiff_t start = -static_cast<std::ptrdiff_t>(n - kGateHop); start < len;
         start += static_cast<std::ptrdiff_t>(kGateHop)) {
        auto t = fft.time();
        for (std::size_t i = 0; i < n; ++i) {
            const std::ptrdiff_t idx = start + static_cast<std::ptrdiff_t>(i);
            t[i] = (idx >= 0 && idx < len) ? window[i] * clip.samples[static_cast<std::size_t>(idx)] : 0.0;
        }
        fft.forward();
        for (auto& bin : fft.spectrum()) {
            if (std::abs(bin) * level_scale < threshold) bin *= attenuation;
        }
        fft.inverse();
        for (std::size_t i = 0; i < n; ++i) {
            const std::ptrdiff_t idx = start + static_cast<std::ptrdiff_t>(i);
            if (idx < 0 || idx >= len) continue;
            acc[static_cast<std::size_t>(idx)] += t[i];
            norm[static_cast<std::size_t>(idx)] += window[i];
        }
    }

    AudioClip out({}, clip.sample_rate_hz);
    out.samples.resize(clip.samples.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out.samples[i] = static_cast<float>(acc[i] / norm[i]);
    return {std::move(out), false};
}

/// 513-tap Hamming windowed-sinc linear-phase high-pass, delay-compensated.
inline AudioClip highpass(const AudioClip& clip, double cutoff_hz) {
    validate(clip);
    const double nyquist = clip.sample_rate_hz / 2.0;
    if (!(cutoff_hz > 0.0) || cutoff_hz >= nyquist)
        throw ParameterError("high-pass cutoff " + std::to_string(cutoff_hz) + " Hz must lie in (0, " +
                             std::to_string(nyquist) + ") Hz");
    const auto taps = fir::highpass_hamming(kHighpassTaps, cutoff_hz / clip.sample_rate_hz);
    const std::vector<double> x(clip.samples.begin(), clip.samples.end());
    const auto y = fir::filter_centered(x, taps);
    AudioClip out({}, clip.sample_rate_hz);
    out.samples.assign(y.size(), 0.0F);
    std::transform(y.begin(), y.end(), out.samples.begin(), [](double v) { return static_cast<float>(v); });
    return out;
}

/// Rate after slowing down by `factor`; the division must be exact.
inline std::uint32_t stretched_rate(std::uint32_t rate_hz, std::uint32_t factor) {
    if (factor < 1) throw ParameterError("stretch factor must be at least 1");
    if (rate_hz % factor != 0)
        throw ParameterError("sample rate " + std::to_string(rate_hz) + " Hz is not divisible by stretch factor " +
                             std::to_string(factor));
    return rate_hz / factor;
}

/// Slows a clip down by reinterpreting its sample rate: samples unchanged,
/// rate divided by factor. Both duration and pitch scale by the factor.
inline AudioClip stretch_relabel(const AudioClip& clip, std::uint32_t factor) {
    return {clip.samples, stretched_rate(clip.sample_rate_hz, factor)};
}

struct PreprocessResult {
    AudioClip clip;
    bool gate_skipped = false;
};

/// noise_gate -> highpass -> stretch_relabel -> resample.
inline PreprocessResult preprocess_pipeline(const AudioClip& clip, const PreprocessConfig& cfg) {
    validate(clip);
    validate(cfg);
    (void)stretched_rate(clip.sample_rate_hz, cfg.stretch_factor);
    auto gated = noise_gate(clip, cfg.noise_threshold_db, cfg.noise_reduction_db);
    auto filtered = highpass(gated.clip, cfg.highpass_cutoff_hz);
    auto slowed = stretch_relabel(filtered, cfg.stretch_factor);
    return {resample(slowed, cfg.target_rate_hz), gated.skipped};
}

}  // namespace sylsep
