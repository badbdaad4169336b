#pragma once

// RIFF/WAVE reading and writing. Reads integer PCM (16/24/32 bit) and 32-bit
// IEEE float, downmixing to mono; always writes 32-bit float mono.

#include <cstdint>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include "sylsep/audio_clip.hpp"
#include "sylsep/detail/bytes.hpp"
#include "sylsep/error.hpp"

namespace sylsep {

namespace wav_detail {

using detail::get_le;

inline constexpr std::uint16_t kTagPcm = 1;
inline constexpr std::uint16_t kTagFloat = 3;
inline constexpr std::uint16_t kTagExtensible = 0xFFFE;

inline bool fourcc_is(std::span<const std::uint8_t> b, std::size_t off, const char* id) {
    return b[off] == id[0] && b[off + 1] == id[1] && b[off + 2] == id[2] && b[off + 3] == id[3];
}

inline std::string tag_name(std::uint16_t tag) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%04X", static_cast<unsigned>(tag));
    return buf;
}

struct Format {
    std::uint16_t tag = 0;
    std::uint16_t channels = 0;
    std::uint32_t rate = 0;
    std::uint16_t block_align = 0;
    std::uint16_t bits = 0;
};

inline double decode_sample(std::span<const std::uint8_t> b, std::size_t off, const Format& f) {
    if (f.tag == kTagFloat) return static_cast<double>(get_le<float>(b, off));
    switch (f.bits) {
        case 16: return get_le<std::int16_t>(b, off) / 32768.0;
        case 24: {
            std::int32_t v = static_cast<std::int32_t>(b[off]) | (static_cast<std::int32_t>(b[off + 1]) << 8) |
                             (static_cast<std::int32_t>(b[off + 2]) << 16);
            if (v & 0x800000) v -= 0x1000000;
            return v / 8388608.0;
        }
        default: return get_le<std::int32_t>(b, off) / 2147483648.0;
    }
}

}  // namespace wav_detail

/// Decodes an in-memory WAV image. `what` names the source in error messages.
inline AudioClip decode_wav(std::span<const std::uint8_t> b, const std::string& what = "wav data") {
    using namespace wav_detail;
    if (b.size() < 12 || !fourcc_is(b, 0, "RIFF") || !fourcc_is(b, 8, "WAVE"))
        throw FormatError("corrupt container: " + what + " is not a RIFF/WAVE file");

    Format fmt;
    bool have_fmt = false;
    std::size_t data_off = 0, data_len = 0;
    bool have_data = false;

    std::size_t pos = 12;
    while (pos + 8 <= b.size()) {
        const auto len = static_cast<std::size_t>(get_le<std::uint32_t>(b, pos + 4));
        const std::size_t body = pos + 8;
        if (len > b.size() - body) throw FormatError("corrupt container: chunk overruns end of " + what);
        if (fourcc_is(b, pos, "fmt ")) {
            if (len < 16) throw FormatError("corrupt container: fmt chunk too short in " + what);
            fmt.tag = get_le<std::uint16_t>(b, body);
            fmt.channels = get_le<std::uint16_t>(b, body + 2);
            fmt.rate = get_le<std::uint32_t>(b, body + 4);
            fmt.block_align = get_le<std::uint16_t>(b, body + 12);
            fmt.bits = get_le<std::uint16_t>(b, body + 14);
            if (fmt.tag == kTagExtensible) {
                if (len < 40) throw FormatError("corrupt container: extensible fmt chunk too short in " + what);
                fmt.tag = get_le<std::uint16_t>(b, body + 24);
            }
            have_fmt = true;
        } else if (fourcc_is(b, pos, "data")) {
            data_off = body;
            data_len = len;
            have_data = true;
        }
        pos = body + len + (len & 1u);
    }
    if (!have_fmt || !have_data) throw FormatError("corrupt container: missing fmt or data chunk in " + what);

    if (fmt.tag != kTagPcm && fmt.tag != kTagFloat)
        throw FormatError("unsupported format: format tag " + tag_name(fmt.tag) + " in " + what);
    const bool bits_ok = fmt.tag == kTagFloat ? fmt.bits == 32 : (fmt.bits == 16 || fmt.bits == 24 || fmt.bits == 32);
    if (!bits_ok)
        throw FormatError("unsupported format: format tag " + tag_name(fmt.tag) + " with " +
                          std::to_string(fmt.bits) + "-bit samples in " + what);
    if (fmt.channels == 0 || fmt.rate == 0)
        throw FormatError("corrupt container: zero channels or sample rate in " + what);
    const std::size_t bytes_per_sample = fmt.bits / 8u;
    const std::size_t frame_bytes = bytes_per_sample * fmt.channels;
    if (fmt.block_align != frame_bytes) throw FormatError("corrupt container: inconsistent block alignment in " + what);

    const std::size_t frames = data_len / frame_bytes;
    AudioClip clip;
    clip.sample_rate_hz = fmt.rate;
    clip.samples.resize(frames);
    for (std::size_t i = 0; i < frames; ++i) {
        const std::size_t off = data_off + i * frame_bytes;
        if (fmt.channels == 1) {
            clip.samples[i] = static_cast<float>(decode_sample(b, off, fmt));
            continue;
        }
        double acc = 0.0;
        for (std::size_t c = 0; c < fmt.channels; ++c) acc += decode_sample(b, off + c * bytes_per_sample, fmt);
        clip.samples[i] = static_cast<float>(acc / fmt.channels);
    }
    return clip;
}

/// Encodes a clip as mono 32-bit float WAV (format tag 3, with fact chunk).
inline std::vector<std::uint8_t> encode_wav(const AudioClip& clip) {
    using detail::put_le;
    validate(clip);
    const auto data_bytes = static_cast<std::uint32_t>(clip.samples.size() * 4u);
    std::vector<std::uint8_t> out;
    out.reserve(58u + data_bytes);
    auto fourcc = [&out](const char* id) { out.insert(out.end(), id, id + 4); };

    fourcc("RIFF");
    put_le<std::uint32_t>(out, 4u + (8u + 18u) + (8u + 4u) + (8u + data_bytes));
    fourcc("WAVE");
    fourcc("fmt ");
    put_le<std::uint32_t>(out, 18);
    put_le<std::uint16_t>(out, wav_detail::kTagFloat);
    put_le<std::uint16_t>(out, 1);
    put_le<std::uint32_t>(out, clip.sample_rate_hz);
    put_le<std::uint32_t>(out, clip.sample_rate_hz * 4u);
    put_le<std::uint16_t>(out, 4);
    put_le<std::uint16_t>(out, 32);
    put_le<std::uint16_t>(out, 0);
    fourcc("fact");
    put_le<std::uint32_t>(out, 4);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(clip.samples.size()));
    fourcc("data");
    put_le<std::uint32_t>(out, data_bytes);
    for (float s : clip.samples) put_le<float>(out, s);
    return out;
}

inline AudioClip read_wav(const std::string& path) { return decode_wav(detail::read_file(path), "'" + path + "'"); }

inline void write_wav(const AudioClip& clip, const std::string& path) { detail::write_file(path, encode_wav(clip)); }

}  // namespace sylsep
