#pragma once

// Syllable annotations, per-syllable mean pooling of feature frames, the
// embedding table format, and a synthetic chirp dataset generator.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sylsep/audio_clip.hpp"
#include "sylsep/error.hpp"
#include "sylsep/frame_matrix.hpp"

namespace sylsep {

/// Labeled interval on the original (un-stretched) recording timeline.
struct SyllableAnnotation {
    std::string recording_id;
    std::string syllable_id;
    double onset_s = 0.0;
    double offset_s = 0.0;
    std::string label;

    friend bool operator==(const SyllableAnnotation&, const SyllableAnnotation&) = default;
};

struct SyllableEmbedding {
    std::string syllable_id;
    std::string label;
    std::vector<double> vector;
};

namespace csv {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

/// Splits one line on commas. Quoting is not supported.
inline std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        fields.emplace_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return fields;
}

inline std::optional<double> parse_double(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

/// %.9g formatting used by every table this toolkit writes.
inline std::string format_g9(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

}  // namespace csv

/// Parses the annotation CSV (columns recording_id, syllable_id, onset_s,
/// offset_s, label, in any order; extra columns ignored). Rows are returned
/// in file order; blank lines are skipped.
inline std::vector<SyllableAnnotation> parse_annotations(std::istream& in) {
    static constexpr const char* kColumns[] = {"recording_id", "syllable_id", "onset_s", "offset_s", "label"};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!csv::trim(line).empty()) break;
    }
    if (csv::trim(line).empty()) throw ValidationError("schema error: annotation file has no header row");

    const auto header = csv::split(line);
    std::size_t col[5];
    for (std::size_t c = 0; c < 5; ++c) {
        const auto it = std::find(header.begin(), header.end(), kColumns[c]);
        if (it == header.end()) throw ValidationError(std::string("schema error: missing column '") + kColumns[c] + "'");
        col[c] = static_cast<std::size_t>(it - header.begin());
    }

    std::vector<SyllableAnnotation> out;
    std::set<std::pair<std::string, std::string>> seen;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        ++row;
        const auto where = "row " + std::to_string(row) + " (line " + std::to_string(line_no) + ")";
        const auto f = csv::split(line);
        if (f.size() != header.size())
            throw ValidationError(where + ": expected " + std::to_string(header.size()) + " fields, found " +
                                  std::to_string(f.size()));
        SyllableAnnotation a;
        a.recording_id = f[col[0]];
        a.syllable_id = f[col[1]];
        a.label = f[col[4]];
        const auto onset = csv::parse_double(f[col[2]]);
        const auto offset = csv::parse_double(f[col[3]]);
        if (!onset || !offset) throw ValidationError(where + ": onset_s/offset_s are not finite decimal numbers");
        a.onset_s = *onset;
        a.offset_s = *offset;
        if (a.syllable_id.empty()) throw ValidationError(where + ": empty syllable_id");
        if (a.label.empty()) throw ValidationError(where + ": empty label");
        if (a.onset_s < 0.0) throw ValidationError(where + ": negative onset_s");
        if (!(a.offset_s > a.onset_s)) throw ValidationError(where + ": offset_s must be greater than onset_s");
        if (!seen.emplace(a.recording_id, a.syllable_id).second)
            throw ValidationError(where + ": duplicate syllable '" + a.syllable_id + "' in recording '" +
                                  a.recording_id + "'");
        out.push_back(std::move(a));
    }
    return out;
}

inline std::vector<SyllableAnnotation> parse_annotations(const std::string& text) {
    std::istringstream in(text);
    return parse_annotations(in);
}

inline std::string format_annotations(const std::vector<SyllableAnnotation>& anns) {
    std::string out = "recording_id,syllable_id,onset_s,offset_s,label\n";
    for (const auto& a : anns) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,", a.onset_s, a.offset_s);
        out += a.recording_id + "," + a.syllable_id + "," + buf + a.label + "\n";
    }
    return out;
}

struct PoolError {
    std::string syllable_id;
    std::string message;
};

struct PoolResult {
    std::vector<SyllableEmbedding> embeddings;  // annotation order, failures skipped
    std::vector<PoolError> errors;
};

/// Indices [first, last) of the frames whose centres lie in [start, end).
template <typename Scalar>
std::pair<std::uint64_t, std::uint64_t> frames_in_interval(const BasicFrameMatrix<Scalar>& fm, double start, double end) {
    const std::uint64_t n = fm.num_frames;
    auto first_not_before = [&](double t) {
        const double guess = std::ceil((t - fm.offset_seconds) / fm.hop_seconds);
        auto i = static_cast<std::uint64_t>(std::clamp(guess, 0.0, static_cast<double>(n)));
        while (i > 0 && fm.center_seconds(i - 1) >= t) --i;
        while (i < n && fm.center_seconds(i) < t) ++i;
        return i;
    };
    const auto first = first_not_before(start);
    const auto last = std::max(first, first_not_before(end));
    return {first, last};
}

/// Mean-pools frames per syllable. Intervals are scaled by stretch_factor onto
/// the feature timeline; frames whose centres fall in [onset', offset') are
/// averaged. If none do, the frame centred nearest the interval midpoint is
/// used. Intervals lying wholly outside the frames' time span are reported
/// in PoolResult::errors.
template <typename Scalar>
PoolResult pool_syllables(const BasicFrameMatrix<Scalar>& fm, const std::vector<SyllableAnnotation>& anns,
                          std::uint32_t stretch_factor) {
    validate(fm);
    if (fm.num_frames == 0) throw ParameterError("pooling: feature matrix has no frames");
    if (stretch_factor < 1) throw ParameterError("pooling: stretch factor must be at least 1");
    for (const auto& a : anns) {
        if (a.recording_id != anns.front().recording_id)
            throw ParameterError("pooling: annotations span several recordings ('" + anns.front().recording_id +
                                 "', '" + a.recording_id + "')");
    }

    const double span_lo = fm.center_seconds(0) - 0.5 * fm.hop_seconds;
    const double span_hi = fm.center_seconds(fm.num_frames - 1) + 0.5 * fm.hop_seconds;

    PoolResult result;
    result.embeddings.reserve(anns.size());
    for (const auto& a : anns) {
        const double start = a.onset_s * stretch_factor;
        const double end = a.offset_s * stretch_factor;
        if (end <= span_lo || start >= span_hi) {
            char buf[160];
            std::snprintf(buf, sizeof buf, "interval [%.6g, %.6g) s lies outside feature range [%.6g, %.6g) s", start,
                          end, span_lo, span_hi);
            result.errors.push_back({a.syllable_id, buf});
            continue;
        }
        auto [first, last] = frames_in_interval(fm, start, end);
        if (first == last) {
            const double mid = 0.5 * (start + end);
            const double guess = std::round((mid - fm.offset_seconds) / fm.hop_seconds);
            auto t = static_cast<std::uint64_t>(std::clamp(guess, 0.0, static_cast<double>(fm.num_frames - 1)));
            auto dist = [&](std::uint64_t i) { return std::abs(fm.center_seconds(i) - mid); };
            while (t > 0 && dist(t - 1) <= dist(t)) --t;
            while (t + 1 < fm.num_frames && dist(t + 1) < dist(t)) ++t;
            first = t;
            last = t + 1;
        }
        SyllableEmbedding e{a.syllable_id, a.label, std::vector<double>(fm.dim, 0.0)};
        for (auto t = first; t < last; ++t) {
            const auto r = fm.row(t);
            for (std::uint32_t j = 0; j < fm.dim; ++j) e.vector[j] += static_cast<double>(r[j]);
        }
        const auto count = static_cast<double>(last - first);
        for (auto& v : e.vector) v /= count;
        result.embeddings.push_back(std::move(e));
    }
    return result;
}

/// Embedding table: header syllable_id,label,v0..v{dim-1}; %.9g values.
inline std::string format_embeddings(const std::vector<SyllableEmbedding>& embs, std::size_t dim) {
    std::string out = "syllable_id,label";
    for (std::size_t j = 0; j < dim; ++j) out += ",v" + std::to_string(j);
    out += '\n';
    for (const auto& e : embs) {
        if (e.vector.size() != dim) throw ParameterError("embedding '" + e.syllable_id + "' has the wrong dimension");
        out += e.syllable_id;
        out += ',';
        out += e.label;
        for (double v : e.vector) {
            out += ',';
            out += csv::format_g9(v);
        }
        out += '\n';
    }
    return out;
}

inline std::vector<SyllableEmbedding> parse_embeddings(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("schema error: embedding file is empty");
    const auto header = csv::split(line);
    if (header.size() < 3 || header[0] != "syllable_id" || header[1] != "label")
        throw ValidationError("schema error: embedding header must start with syllable_id,label,v0");
    for (std::size_t j = 2; j < header.size(); ++j) {
        if (header[j] != "v" + std::to_string(j - 2))
            throw ValidationError("schema error: expected column 'v" + std::to_string(j - 2) + "', found '" + header[j] + "'");
    }
    const std::size_t dim = header.size() - 2;
    std::vector<SyllableEmbedding> out;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto f = csv::split(line);
        const auto where = "line " + std::to_string(line_no);
        if (f.size() != header.size()) throw ValidationError(where + ": wrong number of fields");
        if (f[1].empty()) throw ValidationError(where + ": empty label");
        SyllableEmbedding e{f[0], f[1], std::vector<double>(dim)};
        for (std::size_t j = 0; j < dim; ++j) {
            const auto v = csv::parse_double(f[j + 2]);
            if (!v) throw ValidationError(where + ": non-numeric value in column v" + std::to_string(j));
            e.vector[j] = *v;
        }
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<SyllableEmbedding> parse_embeddings(const std::string& text) {
    std::istringstream in(text);
    return parse_embeddings(in);
}

// ---------------------------------------------------------------------------
// Synthetic dataset

/// Generator constants. Class k of C owns the band
/// [12 kHz + k w, 12 kHz + (k + 1) w) with w = 48 kHz / C; its chirps sweep
/// the inner 80% of that band, upward for even k and downward for odd k, with
/// per-syllable endpoint jitter of up to ±5% of w.
struct SynthConstants {
    static constexpr std::uint32_t sample_rate_hz = 256000;
    static constexpr double band_lo_hz = 12000.0;
    static constexpr double band_hi_hz = 60000.0;
    static constexpr double min_duration_s = 0.080;
    static constexpr double max_duration_s = 0.400;
    static constexpr double amplitude = 0.5;
    static constexpr double noise_dbfs = -45.0;  // RMS of the white noise floor
    static constexpr double gap_s = 0.050;
    static constexpr double ramp_s = 0.002;  // raised-cosine fade at each chirp end
    static constexpr double jitter_fraction = 0.05;
};

struct ClassBand {
    double lo_hz;
    double hi_hz;
};

inline ClassBand synth_class_band(std::size_t k, std::size_t num_classes) {
    const double w = (SynthConstants::band_hi_hz - SynthConstants::band_lo_hz) / static_cast<double>(num_classes);
    return {SynthConstants::band_lo_hz + w * static_cast<double>(k), SynthConstants::band_lo_hz + w * static_cast<double>(k + 1)};
}

struct SynthDataset {
    AudioClip clip;
    std::vector<SyllableAnnotation> annotations;
};

/// Deterministic chirp dataset: classes emitted in order, per_class[k]
/// syllables labelled "C<k>", separated by 50 ms gaps, over a -45 dBFS white
/// noise floor at 256 kHz.
inline SynthDataset synthesize_dataset(std::size_t num_classes, const std::vector<std::uint32_t>& per_class,
                                       std::uint64_t seed) {
    using K = SynthConstants;
    if (num_classes != per_class.size())
        throw ParameterError("synth: " + std::to_string(num_classes) + " classes but " +
                             std::to_string(per_class.size()) + " counts");
    if (num_classes == 0) throw ParameterError("synth: need at least one class");
    for (auto c : per_class) {
        if (c < 1) throw ParameterError("synth: every class needs at least one syllable");
    }

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double rate = K::sample_rate_hz;
    const auto gap = static_cast<std::size_t>(std::llround(K::gap_s * rate));

    struct Chirp {
        std::size_t start, length;
        double f0, f1;
    };
    std::vector<Chirp> chirps;
    SynthDataset ds;
    ds.clip.sample_rate_hz = K::sample_rate_hz;
    std::size_t cursor = gap;
    std::size_t index = 0;
    for (std::size_t k = 0; k < num_classes; ++k) {
        const auto band = synth_class_band(k, num_classes);
        const double w = band.hi_hz - band.lo_hz;
        double f_from = band.lo_hz + 0.1 * w, f_to = band.hi_hz - 0.1 * w;
        if (k % 2 == 1) std::swap(f_from, f_to);
        for (std::uint32_t i = 0; i < per_class[k]; ++i) {
            const double dur = K::min_duration_s + (K::max_duration_s - K::min_duration_s) * unit(rng);
            const auto length = static_cast<std::size_t>(std::llround(dur * rate));
            const double j0 = (2.0 * unit(rng) - 1.0) * K::jitter_fraction * w;
            const double j1 = (2.0 * unit(rng) - 1.0) * K::jitter_fraction * w;
            chirps.push_back({cursor, length, f_from + j0, f_to + j1});
            char id[32];
            std::snprintf(id, sizeof id, "s%04zu", ++index);
            ds.annotations.push_back({"synth", id, static_cast<double>(cursor) / rate,
                                      static_cast<double>(cursor + length) / rate, "C" + std::to_string(k)});
            cursor += length + gap;
        }
    }

    std::vector<double> signal(cursor, 0.0);
    std::normal_distribution<double> noise(0.0, std::pow(10.0, K::noise_dbfs / 20.0));
    for (auto& s : signal) s = noise(rng);

    const auto ramp = static_cast<std::size_t>(std::llround(K::ramp_s * rate));
    for (const auto& c : chirps) {
        const double duration = static_cast<double>(c.length) / rate;
        const double sweep = (c.f1 - c.f0) / duration;
        for (std::size_t n = 0; n < c.length; ++n) {
            const double t = static_cast<double>(n) / rate;
            const double phase = 2.0 * std::numbers::pi * (c.f0 * t + 0.5 * sweep * t * t);
            double env = 1.0;
            const std::size_t from_end = c.length - 1 - n;
            const std::size_t edge = std::min(n, from_end);
            if (edge < ramp) env = 0.5 - 0.5 * std::cos(std::numbers::pi * static_cast<double>(edge) / ramp);
            signal[c.start + n] += K::amplitude * env * std::sin(phase);
        }
    }
    ds.clip.samples.resize(signal.size());
    std::transform(signal.begin(), signal.end(), ds.clip.samples.begin(), [](double v) { return static_cast<float>(v); });
    return ds;
}

}  // namespace sylsep
