#pragma once

// Rational-ratio polyphase resampling with a Kaiser-windowed sinc kernel.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sylsep/audio_clip.hpp"
#include "sylsep/error.hpp"
#include "sylsep/fir.hpp"

namespace sylsep {

/// Kernel design for resample(). The pass band runs to passband_edge ×
/// min(source, target) rate; the stop band starts at half that rate.
struct ResamplerDesign {
    double passband_edge = 0.45;
    double stopband_attenuation_db = 90.0;
};

namespace resample_detail {

// Continuous kernel in input-sample units, centred at 0.
struct Kernel {
    double cutoff;      // cycles per input sample
    double half_width;  // input samples
    double beta;

    [[nodiscard]] double operator()(double t) const {
        return 2.0 * cutoff * fir::sinc(2.0 * cutoff * t) * fir::kaiser(t, half_width, beta);
    }
};

inline Kernel design(std::uint32_t source, std::uint32_t target, const ResamplerDesign& d) {
    const double min_rate = std::min(source, target);
    const double pass = d.passband_edge * min_rate;
    const double stop = 0.5 * min_rate;
    const double transition = (stop - pass) / source;  // cycles per input sample
    const double a = d.stopband_attenuation_db;
    const double length = (a - 7.95) / (14.36 * transition);
    return {0.5 * (pass + stop) / source, std::ceil(0.5 * length) + 1.0, fir::kaiser_beta(a)};
}

// Taps for one fractional phase: coefficient j multiplies x[base + h - 1 - j]
// for j in [0, 2h). Normalized to unit sum.
inline void phase_taps(const Kernel& k, double frac, std::vector<double>& out) {
    const auto h = static_cast<std::ptrdiff_t>(k.half_width);
    out.assign(static_cast<std::size_t>(2 * h), 0.0);
    double sum = 0.0;
    for (std::ptrdiff_t j = -h + 1; j <= h; ++j) {
        const double c = k(frac + static_cast<double>(j));
        out[static_cast<std::size_t>(j + h - 1)] = c;
        sum += c;
    }
    for (auto& c : out) c /= sum;
}

}  // namespace resample_detail

/// Output length for resampling n_in samples: round(n_in × target / source).
inline std::size_t resampled_length(std::size_t n_in, std::uint32_t source, std::uint32_t target) {
    const auto num = static_cast<unsigned __int128>(n_in) * target;
    return static_cast<std::size_t>((num + source / 2) / source);
}

/// Resamples to target_rate_hz. Output sample n sits at input time n × source
/// / target; input is zero outside its range. Identity when the rates match.
inline AudioClip resample(const AudioClip& clip, std::uint32_t target_rate_hz, const ResamplerDesign& design = {}) {
    if (target_rate_hz == 0) throw ParameterError("resample: target rate must be positive");
    if (clip.sample_rate_hz == 0) throw ParameterError("resample: source rate must be positive");
    if (target_rate_hz == clip.sample_rate_hz) return clip;

    const std::uint64_t g = std::gcd(clip.sample_rate_hz, target_rate_hz);
    const std::uint64_t up = target_rate_hz / g;
    const std::uint64_t down = clip.sample_rate_hz / g;
    const auto kernel = resample_detail::design(clip.sample_rate_hz, target_rate_hz, design);
    const auto h = static_cast<std::ptrdiff_t>(kernel.half_width);

    // Precompute one tap set per phase unless the phase table would be huge.
    constexpr std::uint64_t kMaxTableEntries = 1u << 23;
    const bool use_table = up * static_cast<std::uint64_t>(2 * h) <= kMaxTableEntries;
    std::vector<std::vector<double>> table;
    if (use_table) {
        table.resize(up);
        for (std::uint64_t p = 0; p < up; ++p)
            resample_detail::phase_taps(kernel, static_cast<double>(p) / static_cast<double>(up), table[p]);
    }

    const auto n_in = static_cast<std::ptrdiff_t>(clip.samples.size());
    const std::size_t n_out = resampled_length(clip.samples.size(), clip.sample_rate_hz, target_rate_hz);
    AudioClip out({}, target_rate_hz);
    out.samples.resize(n_out);
    std::vector<double> scratch;
    for (std::size_t n = 0; n < n_out; ++n) {
        const std::uint64_t pos = n * down;
        const auto base = static_cast<std::ptrdiff_t>(pos / up);
        const std::uint64_t phase = pos % up;
        const std::vector<double>* taps = nullptr;
        if (use_table) {
            taps = &table[phase];
        } else {
            resample_detail::phase_taps(kernel, static_cast<double>(phase) / static_cast<double>(up), scratch);
            taps = &scratch;
        }
        // Tap j pairs with input index base + h - 1 - j.
        const std::ptrdiff_t top = base + h - 1;
        const std::ptrdiff_t j_begin = std::max<std::ptrdiff_t>(0, top - (n_in - 1));
        const std::ptrdiff_t j_end = std::min<std::ptrdiff_t>(2 * h, top + 1);
        double acc = 0.0;
        for (std::ptrdiff_t j = j_begin; j < j_end; ++j)
            acc += (*taps)[static_cast<std::size_t>(j)] * clip.samples[static_cast<std::size_t>(top - j)];
        out.samples[n] = static_cast<float>(acc);
    }
    return out;
}

}  // namespace sylsep
