#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sylsep/cepstral.hpp"

using namespace sylsep;
using Catch::Approx;

namespace {

// Straight-line MFCC/LFCC for one frame: naive DFT, triangles from the
// closed-form edge list, natural log, DCT-II by formula.
std::vector<double> reference_frame(const std::vector<float>& x, std::size_t start, const CepstralConfig& cfg, double rate) {
    const std::size_t n = cfg.fft_size, bins = n / 2 + 1;
    std::vector<double> power(bins);
    for (std::size_t k = 0; k < bins; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double w = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / n);
            acc += w * x[start + i] * std::polar(1.0, -2.0 * std::numbers::pi * static_cast<double>(k * i % n) / n);
        }
        power[k] = std::norm(acc);
    }
    const bool mel = cfg.kind == FilterScale::mel;
    auto fwd = [mel](double f) { return mel ? 1127.0 * std::log(1.0 + f / 700.0) : f; };
    auto inv = [mel](double s) { return mel ? 700.0 * (std::exp(s / 1127.0) - 1.0) : s; };
    const std::size_t m_count = cfg.num_filters;
    std::vector<double> edges(m_count + 2);
    for (std::size_t i = 0; i < edges.size(); ++i)
        edges[i] = inv(fwd(cfg.fmin_hz) + (fwd(cfg.fmax_hz) - fwd(cfg.fmin_hz)) * i / (m_count + 1));
    std::vector<double> loge(m_count);
    for (std::size_t m = 0; m < m_count; ++m) {
        double e = 0.0;
        for (std::size_t k = 0; k < bins; ++k) {
            const double f = k * rate / n;
            double w = 0.0;
            if (f > edges[m] && f <= edges[m + 1]) w = (f - edges[m]) / (edges[m + 1] - edges[m]);
            else if (f > edges[m + 1] && f < edges[m + 2]) w = (edges[m + 2] - f) / (edges[m + 2] - edges[m + 1]);
            e += w * power[k];
        }
        loge[m] = std::log(std::max(e, cfg.log_floor));
    }
    std::vector<double> c(cfg.num_coeffs);
    const std::size_t first = cfg.include_c0 ? 0 : 1;
    for (std::size_t r = 0; r < c.size(); ++r) {
        const std::size_t k = r + first;
        double acc = 0.0;
        for (std::size_t m = 0; m < m_count; ++m) acc += loge[m] * std::cos(std::numbers::pi * k * (m + 0.5) / m_count);
        c[r] = acc * (k == 0 ? std::sqrt(1.0 / m_count) : std::sqrt(2.0 / m_count));
    }
    return c;
}

AudioClip noise_clip(std::size_t n, std::uint32_t rate, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.2);
    AudioClip clip({}, rate);
    for (std::size_t i = 0; i < n; ++i) clip.samples.push_back(static_cast<float>(g(rng)));
    return clip;
}

}  // namespace

TEST_CASE("HTK mel scale reference values", "[cepstral]") {
    CHECK(hz_to_mel(0.0) == 0.0);
    CHECK(hz_to_mel(700.0) == Approx(781.1728).margin(1e-3));
    CHECK(hz_to_mel(1000.0) == Approx(999.9855).margin(1e-3));
    for (double f : {1.0, 123.0, 4000.0, 7999.0}) CHECK(mel_to_hz(hz_to_mel(f)) == Approx(f).epsilon(1e-12));
}

TEST_CASE("one second of 16 kHz audio gives 49 frames of 13 coefficients", "[cepstral]") {
    const auto fm = cepstral_features(AudioClip(oracle::tone(440.0, 0.5, 16000, 16000), 16000), {});
    CHECK(fm.dim == 13);
    CHECK(fm.num_frames == 49);
    CHECK(fm.hop_seconds == Approx(0.02));
    CHECK(fm.offset_seconds == Approx(200.0 / 16000.0));
    CHECK(fm.center_seconds(0) == Approx(0.0125));
}

TEST_CASE("all-zero clip yields the log-floor frame", "[cepstral]") {
    const auto fm = cepstral_features(AudioClip(std::vector<float>(16000, 0.0F), 16000), {});
    const float c0 = static_cast<float>(std::sqrt(26.0) * std::log(1e-10));
    CHECK(c0 == Approx(-117.40926).margin(1e-4));
    for (std::uint64_t t = 0; t < fm.num_frames; ++t) {
        REQUIRE(fm.at(t, 0) == Approx(c0).epsilon(1e-6));
        for (std::uint32_t j = 1; j < fm.dim; ++j) REQUIRE(std::abs(fm.at(t, j)) < 1e-4);
    }
}

TEST_CASE("cepstra match a straight-line reference", "[cepstral][oracle]") {
    const auto clip = noise_clip(4000, 16000, 17);
    for (FilterScale kind : {FilterScale::mel, FilterScale::linear}) {
        for (bool c0 : {true, false}) {
            CepstralConfig cfg;
            cfg.kind = kind;
            cfg.include_c0 = c0;
            cfg.fmin_hz = 100.0;
            cfg.fmax_hz = 7600.0;
            const auto fm = cepstral_features<double>(clip, cfg);
            for (std::uint64_t t : {std::uint64_t{0}, std::uint64_t{5}, fm.num_frames - 1}) {
                const auto ref = reference_frame(clip.samples, t * cfg.hop, cfg, 16000);
                for (std::uint32_t j = 0; j < fm.dim; ++j) REQUIRE(fm.at(t, j) == Approx(ref[j]).margin(1e-8));
            }
        }
    }
}

TEST_CASE("mel and linear variants have the same shape but differ", "[cepstral]") {
    const auto clip = noise_clip(8000, 16000, 3);
    CepstralConfig lin;
    lin.kind = FilterScale::linear;
    const auto a = cepstral_features(clip, {});
    const auto b = cepstral_features(clip, lin);
    CHECK(a.dim == b.dim);
    CHECK(a.num_frames == b.num_frames);
    CHECK(a.data != b.data);
}

TEST_CASE("gain changes only c0, by 2 sqrt(M) ln g", "[cepstral][property]") {
    const auto clip = noise_clip(6400, 16000, 23);
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> gains(0.05, 4.0);
    for (int trial = 0; trial < 5; ++trial) {
        const double g = gains(rng);
        AudioClip scaled = clip;
        for (auto& s : scaled.samples) s = static_cast<float>(s * g);
        const auto a = cepstral_features<double>(clip, {});
        const auto b = cepstral_features<double>(scaled, {});
        const double shift = 2.0 * std::sqrt(26.0) * std::log(g);
        for (std::uint64_t t = 0; t < a.num_frames; ++t) {
            REQUIRE(b.at(t, 0) - a.at(t, 0) == Approx(shift).margin(1e-5));
            for (std::uint32_t j = 1; j < a.dim; ++j) REQUIRE(b.at(t, j) == Approx(a.at(t, j)).margin(1e-6));
        }
    }
}

TEST_CASE("delaying by one hop shifts the frames by one", "[cepstral][property]") {
    const auto clip = noise_clip(6400, 16000, 31);
    AudioClip delayed = clip;
    delayed.samples.insert(delayed.samples.begin(), 320, 0.0F);
    const auto a = cepstral_features<double>(clip, {});
    const auto b = cepstral_features<double>(delayed, {});
    REQUIRE(b.num_frames == a.num_frames + 1);
    for (std::uint64_t t = 0; t < a.num_frames; ++t)
        for (std::uint32_t j = 0; j < a.dim; ++j) REQUIRE(b.at(t + 1, j) == Approx(a.at(t, j)).margin(1e-9));
}

TEST_CASE("filterbank triangles peak at 1 and are nonnegative", "[cepstral]") {
    for (FilterScale kind : {FilterScale::mel, FilterScale::linear}) {
        const Filterbank bank(kind, 26, 0.0, 8000.0);
        for (std::uint32_t m = 0; m < bank.size(); ++m) {
            CHECK(bank.weight(m, bank.center_hz(m)) == Approx(1.0));
            if (m > 0) CHECK(bank.center_hz(m) > bank.center_hz(m - 1));
        }
        for (double w : bank.matrix(400, 16000)) REQUIRE(w >= 0.0);
    }
    const Filterbank lin(FilterScale::linear, 3, 0.0, 400.0);
    CHECK(lin.center_hz(0) == Approx(100.0));
    CHECK(lin.weight(0, 50.0) == Approx(0.5));
    CHECK(lin.weight(0, 200.0) == 0.0);
}

TEST_CASE("orthonormal DCT-II basis reconstructs", "[cepstral]") {
    const std::uint32_t n = 26;
    const auto d = dct2_orthonormal(n, n);
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g;
    std::vector<double> x(n), y(n, 0.0), back(n, 0.0);
    for (auto& v : x) v = g(rng);
    for (std::uint32_t k = 0; k < n; ++k)
        for (std::uint32_t i = 0; i < n; ++i) y[k] += d[k * n + i] * x[i];
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t k = 0; k < n; ++k) back[i] += d[k * n + i] * y[k];
    for (std::uint32_t i = 0; i < n; ++i) CHECK(back[i] == Approx(x[i]).margin(1e-9));
}

TEST_CASE("pre-emphasis option changes the output", "[cepstral]") {
    const auto clip = noise_clip(3200, 16000, 44);
    CepstralConfig cfg;
    cfg.pre_emphasis = 0.97;
    CHECK(cepstral_features(clip, cfg).data != cepstral_features(clip, {}).data);
}

TEST_CASE("cepstral parameter checks", "[cepstral]") {
    const AudioClip short_clip(std::vector<float>(399, 0.0F), 16000);
    REQUIRE_THROWS_AS(cepstral_features(short_clip, {}), ParameterError);
    REQUIRE_THROWS_WITH(cepstral_features(short_clip, {}), Catch::Matchers::ContainsSubstring("insufficient samples"));
    CHECK(cepstral_features(AudioClip(std::vector<float>(400, 0.0F), 16000), {}).num_frames == 1);

    const AudioClip clip(std::vector<float>(4000, 0.0F), 16000);
    CepstralConfig bad;
    bad.num_coeffs = 27;
    CHECK_THROWS_AS(cepstral_features(clip, bad), ParameterError);
    bad = {};
    bad.fmax_hz = 9000.0;
    CHECK_THROWS_AS(cepstral_features(clip, bad), ParameterError);
    bad = {};
    bad.hop = 0;
    CHECK_THROWS_AS(cepstral_features(clip, bad), ParameterError);
}
