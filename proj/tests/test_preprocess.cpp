#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sylsep/preprocess.hpp"

using namespace sylsep;
using Catch::Approx;

namespace {

// DTFT magnitude of an FIR at `freq` cycles/sample, summed directly.
double dtft_magnitude(const std::vector<double>& h, double freq) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) acc += h[i] * std::polar(1.0, -2.0 * std::numbers::pi * freq * i);
    return std::abs(acc);
}

double max_abs(const std::vector<float>& x, std::size_t start, std::size_t end) {
    double m = 0.0;
    for (std::size_t i = start; i < end; ++i) m = std::max(m, static_cast<double>(std::abs(x[i])));
    return m;
}

}  // namespace

// ---------------------------------------------------------------- noise_gate

TEST_CASE("noise gate keeps an all-zero clip at zero", "[noise_gate]") {
    const AudioClip silent(std::vector<float>(5000, 0.0F), 16000);
    const auto out = noise_gate(silent, -65.0, 90.0);
    CHECK_FALSE(out.skipped);
    CHECK(out.clip == silent);
}

TEST_CASE("noise gate passes a full-scale sine within 1 dB", "[noise_gate]") {
    const AudioClip clip(oracle::tone(2000.0, 1.0, 16000, 16000), 16000);
    const auto out = noise_gate(clip, -65.0, 90.0).clip;
    REQUIRE(out.samples.size() == clip.samples.size());
    const double in_db = oracle::rms_db(clip.samples, 0, clip.size());
    const double out_db = oracle::rms_db(out.samples, 0, out.size());
    CHECK(std::abs(out_db - in_db) <= 1.0);
    // FFT-peak level before and after, away from the edges.
    const auto before = oracle::spectral_peak(clip.samples, 16000, 4000, 4096);
    const auto after = oracle::spectral_peak(out.samples, 16000, 4000, 4096);
    CHECK(after.bin == before.bin);
    CHECK(std::abs(20.0 * std::log10(after.magnitude / before.magnitude)) <= 1.0);
}

TEST_CASE("noise gate silences a sine below threshold", "[noise_gate]") {
    const double amp = std::pow(10.0, -90.0 / 20.0);
    const AudioClip clip(oracle::tone(2000.0, amp, 16000, 16000), 16000);
    const auto out = noise_gate(clip, -65.0, 90.0).clip;
    CHECK(oracle::rms_db(out.samples, 0, out.size()) <= -170.0);
}

TEST_CASE("noise gate with nothing gated reconstructs the input", "[noise_gate]") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<float> u(-0.5F, 0.5F);
    AudioClip clip({}, 48000);
    for (int i = 0; i < 7000; ++i) clip.samples.push_back(u(rng));
    const auto out = noise_gate(clip, -120.0, 0.0).clip;
    for (std::size_t i = 0; i < clip.size(); ++i) REQUIRE(out.samples[i] == Approx(clip.samples[i]).margin(1e-6));
}

TEST_CASE("noise gate is idempotent above threshold", "[noise_gate][property]") {
    for (double f : {440.0, 1500.0, 3100.0, 6000.0}) {
        const AudioClip clip(oracle::tone(f, 0.7, 16000, 12000), 16000);
        const auto once = noise_gate(clip, -65.0, 90.0).clip;
        const auto twice = noise_gate(once, -65.0, 90.0).clip;
        CHECK(std::abs(oracle::rms_db(twice.samples, 0, twice.size()) - oracle::rms_db(once.samples, 0, once.size())) <= 0.1);
    }
}

TEST_CASE("noise gate returns short clips unchanged with a flag", "[noise_gate]") {
    const AudioClip clip(oracle::tone(1000.0, 0.001, 16000, 1000), 16000);
    const auto out = noise_gate(clip, -65.0, 90.0);
    CHECK(out.skipped);
    CHECK(out.clip == clip);
}

// ------------------------------------------------------------------ highpass

TEST_CASE("high-pass FIR design rejects DC and passes 20 kHz", "[highpass]") {
    const auto h = fir::highpass_hamming(kHighpassTaps, 10000.0 / 250000.0);
    REQUIRE(h.size() == 513);
    CHECK(dtft_magnitude(h, 0.0) <= std::pow(10.0, -50.0 / 20.0));
    CHECK(std::abs(20.0 * std::log10(dtft_magnitude(h, 20000.0 / 250000.0))) <= 1.0);
    for (std::size_t i = 0; i < h.size(); ++i) REQUIRE(h[i] == Approx(h[h.size() - 1 - i]).margin(1e-15));
}

TEST_CASE("high-pass removes DC from a constant clip", "[highpass]") {
    const AudioClip dc(std::vector<float>(20000, 0.25F), 250000);
    const auto out = highpass(dc, 10000.0);
    REQUIRE(out.size() == dc.size());
    // Central region: at least one half filter length from either edge.
    CHECK(max_abs(out.samples, 512, out.size() - 512) <= std::pow(10.0, -50.0 / 20.0) * 0.25);
}

TEST_CASE("high-pass keeps a 20 kHz sine within 1 dB and in phase", "[highpass]") {
    const AudioClip clip(oracle::tone(20000.0, 1.0, 250000, 25000), 250000);
    const auto out = highpass(clip, 10000.0);
    const double amp = oracle::fitted_amplitude(out.samples, 20000.0, 250000, 1000, 20000);
    CHECK(std::abs(20.0 * std::log10(amp)) <= 1.0);
    double err = 0.0;
    for (std::size_t i = 1000; i < 24000; ++i) err = std::max(err, static_cast<double>(std::abs(out.samples[i] - clip.samples[i])));
    CHECK(err < 0.01);
}

TEST_CASE("FFT overlap-add filtering matches direct convolution", "[highpass][oracle]") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g;
    for (std::size_t n : {1u, 100u, 513u, 3000u, 9001u}) {
        std::vector<double> x(n);
        for (auto& v : x) v = g(rng);
        const auto h = fir::highpass_hamming(kHighpassTaps, 0.07);
        const auto fast = fir::filter_centered(x, h);
        const auto slow = oracle::convolve_centered(x, h);
        for (std::size_t i = 0; i < n; ++i) REQUIRE(fast[i] == Approx(slow[i]).margin(1e-11));
    }
}

TEST_CASE("high-pass cutoff at or above Nyquist is a parameter error", "[highpass]") {
    const AudioClip clip(std::vector<float>(100, 0.0F), 250000);
    CHECK_THROWS_AS(highpass(clip, 130000.0), ParameterError);
    CHECK_THROWS_AS(highpass(clip, 125000.0), ParameterError);
    CHECK_THROWS_AS(highpass(clip, 0.0), ParameterError);
}

// ----------------------------------------------------------- stretch_relabel

TEST_CASE("stretch relabels the rate and keeps samples", "[stretch]") {
    const AudioClip clip({0.1F, -0.2F, 0.3F}, 250000);
    const auto slow = stretch_relabel(clip, 8);
    CHECK(slow.sample_rate_hz == 31250);
    CHECK(slow.samples == clip.samples);
    CHECK(slow.duration_seconds() == Approx(clip.duration_seconds() * 8));
    CHECK(stretch_relabel(clip, 1) == clip);
    CHECK_THROWS_AS(stretch_relabel(AudioClip({0.0F}, 44100), 8), ParameterError);
    CHECK_THROWS_AS(stretch_relabel(clip, 0), ParameterError);
}

// ------------------------------------------------------------------ resample

TEST_CASE("resample to the same rate is the identity", "[resample]") {
    const AudioClip clip({0.5F, -0.25F, 0.125F}, 16000);
    CHECK(resample(clip, 16000) == clip);
}

TEST_CASE("resample output length is round(n * target / source)", "[resample]") {
    CHECK(resample(AudioClip(std::vector<float>(31250, 0.0F), 31250), 16000).size() == 16000);
    CHECK(resampled_length(3, 3, 2) == 2);
    CHECK(resampled_length(1, 48000, 16000) == 0);
    CHECK(resampled_length(2, 48000, 16000) == 1);
    CHECK(resampled_length(1000, 44100, 16000) == 363);
    CHECK_THROWS_AS(resample(AudioClip({0.0F}, 16000), 0), ParameterError);
}

TEST_CASE("1 kHz sine survives 48 kHz -> 16 kHz", "[resample]") {
    const AudioClip clip(oracle::tone(1000.0, 1.0, 48000, 48000), 48000);
    const auto out = resample(clip, 16000);
    REQUIRE(out.sample_rate_hz == 16000);
    REQUIRE(out.size() == 16000);
    const auto peak = oracle::spectral_peak(out.samples, 16000, 4000, 4096);
    CHECK(std::abs(peak.frequency_hz - 1000.0) <= peak.bin_width_hz);
    CHECK(oracle::fitted_amplitude(out.samples, 1000.0, 16000, 2000, 12000) == Approx(1.0).epsilon(0.01));
}

TEST_CASE("resample pure tones keep frequency and amplitude", "[resample][property]") {
    std::mt19937_64 rng(99);
    const std::pair<std::uint32_t, std::uint32_t> ratios[] = {{32000, 16000}, {31250, 16000}, {44100, 16000},
                                                              {16000, 48000}, {22050, 16000}, {8000, 11025}};
    for (auto [src, dst] : ratios) {
        const double limit = 0.45 * std::min(src, dst);
        std::uniform_real_distribution<double> freq(50.0, limit);
        for (int t = 0; t < 3; ++t) {
            const double f = freq(rng);
            const AudioClip clip(oracle::tone(f, 0.8, src, src), src);
            const auto out = resample(clip, dst);
            CAPTURE(src, dst, f);
            const auto peak = oracle::spectral_peak(out.samples, dst, dst / 4, 4096);
            CHECK(std::abs(peak.frequency_hz - f) <= peak.bin_width_hz);
            // Passband ripple <= 0.1 dB.
            const double amp = oracle::fitted_amplitude(out.samples, f, dst, dst / 8, dst * 3 / 4);
            CHECK(std::abs(20.0 * std::log10(amp / 0.8)) <= 0.1);
        }
    }
}

TEST_CASE("resample attenuates content above the target Nyquist by 80 dB", "[resample]") {
    for (double f : {8000.0, 9000.0, 12000.0, 15000.0}) {
        const AudioClip clip(oracle::tone(f, 1.0, 32000, 32000), 32000);
        const auto out = resample(clip, 16000);
        CAPTURE(f);
        CHECK(oracle::rms_db(out.samples, 2000, 14000) <= -80.0 - 3.0);
    }
}

// -------------------------------------------------------- preprocess_pipeline

TEST_CASE("pipeline maps silence to silence at the target rate", "[pipeline]") {
    const AudioClip silent(std::vector<float>(25600, 0.0F), 256000);
    const auto out = preprocess_pipeline(silent, {}).clip;
    CHECK(out.sample_rate_hz == 16000);
    CHECK(out.size() == resampled_length(25600, 32000, 16000));
    for (float s : out.samples) REQUIRE(s == 0.0F);
}

TEST_CASE("pipeline divides tone frequencies by the stretch factor", "[pipeline][property]") {
    for (double f : {12000.0, 20000.0, 33000.0, 50000.0}) {
        const AudioClip clip(oracle::tone(f, 1.0, 256000, 128000), 256000);
        const auto out = preprocess_pipeline(clip, {}).clip;
        CAPTURE(f);
        REQUIRE(out.sample_rate_hz == 16000);
        const auto peak = oracle::spectral_peak(out.samples, 16000, 16000, 4096);
        CHECK(std::abs(peak.frequency_hz - f / 8.0) <= peak.bin_width_hz);
    }
}

TEST_CASE("pipeline removes tones below the high-pass cutoff", "[pipeline]") {
    const AudioClip clip(oracle::tone(4000.0, 1.0, 256000, 128000), 256000);
    const auto out = preprocess_pipeline(clip, {}).clip;
    CHECK(oracle::rms_db(out.samples, 0, out.size()) <= -50.0);
}

TEST_CASE("pipeline output rate always equals the configured target", "[pipeline][property]") {
    const AudioClip clip(oracle::tone(15000.0, 0.5, 192000, 20000), 192000);
    for (std::uint32_t stretch : {1u, 2u, 4u, 8u}) {
        for (std::uint32_t target : {8000u, 16000u, 22050u}) {
            PreprocessConfig cfg;
            cfg.stretch_factor = stretch;
            cfg.target_rate_hz = target;
            CHECK(preprocess_pipeline(clip, cfg).clip.sample_rate_hz == target);
        }
    }
}

TEST_CASE("pipeline validates its configuration", "[pipeline]") {
    const AudioClip clip(std::vector<float>(4096, 0.0F), 256000);
    PreprocessConfig bad;
    bad.stretch_factor = 0;
    CHECK_THROWS_AS(preprocess_pipeline(clip, bad), ParameterError);
    bad = {};
    bad.target_rate_hz = 4000;
    CHECK_THROWS_AS(preprocess_pipeline(clip, bad), ParameterError);
    bad = {};
    bad.noise_threshold_db = 3.0;
    CHECK_THROWS_AS(preprocess_pipeline(clip, bad), ParameterError);
    bad = {};
    bad.stretch_factor = 7;  // 256000 / 7 is not integral
    CHECK_THROWS_AS(preprocess_pipeline(clip, bad), ParameterError);
    bad = {};
    bad.highpass_cutoff_hz = 200000.0;
    CHECK_THROWS_AS(preprocess_pipeline(clip, bad), ParameterError);
}
