#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sylsep/error.hpp"

namespace sylsep {

/// Mono waveform plus its nominal sample rate. Samples are float so that the
/// canonical float WAV container roundtrips bit-exactly.
struct AudioClip {
    std::vector<float> samples;
    std::uint32_t sample_rate_hz = 0;

    AudioClip() = default;
    AudioClip(std::vector<float> s, std::uint32_t rate) : samples(std::move(s)), sample_rate_hz(rate) {}

    [[nodiscard]] std::size_t size() const noexcept { return samples.size(); }
    [[nodiscard]] bool empty() const noexcept { return samples.empty(); }
    [[nodiscard]] double duration_seconds() const noexcept {
        return sample_rate_hz == 0 ? 0.0 : static_cast<double>(samples.size()) / sample_rate_hz;
    }

    friend bool operator==(const AudioClip&, const AudioClip&) = default;
};

/// Throws ParameterError if the clip breaks the AudioClip invariants.
inline void validate(const AudioClip& clip) {
    if (clip.sample_rate_hz == 0) throw ParameterError("audio clip: sample rate must be positive");
    for (std::size_t i = 0; i < clip.samples.size(); ++i) {
        if (!std::isfinite(clip.samples[i]))
            throw ParameterError("audio clip: non-finite sample at index " + std::to_string(i));
    }
}

/// Root-mean-square level of the samples in dBFS (amplitude 1.0 == 0 dBFS).
/// Returns -infinity for silence or an empty clip.
inline double rms_dbfs(const std::vector<float>& samples) {
    if (samples.empty()) return -INFINITY;
    double acc = 0.0;
    for (float s : samples) acc += static_cast<double>(s) * s;
    const double rms = std::sqrt(acc / static_cast<double>(samples.size()));
    return rms > 0.0 ? 20.0 * std::log10(rms) : -INFINITY;
}

}  // namespace sylsep
