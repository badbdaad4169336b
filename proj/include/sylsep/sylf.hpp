#pragma once

// SYLF v1: binary container for frame features. Byte layout, all
// little-endian:
//
//   offset  size  field
//        0     4  magic "SYLF"
//        4     4  version (u32) = 1
//        8     4  dim (u32)
//       12     8  num_frames (u64)
//       20     8  hop_seconds (f64)
//       28     8  offset_seconds (f64)
//       36     4  source_name_len (u32)
//       40     n  source_name (UTF-8, no terminator)
//   40 + n        num_frames * dim f32, frame-major

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <vector>

#include "sylsep/detail/bytes.hpp"
#include "sylsep/error.hpp"
#include "sylsep/frame_matrix.hpp"

namespace sylsep {

inline constexpr char kSylfMagic[4] = {'S', 'Y', 'L', 'F'};
inline constexpr std::uint32_t kSylfVersion = 1;
inline constexpr std::size_t kSylfFixedHeaderBytes = 40;

struct SylfFile {
    FrameMatrix frames;
    std::string source_name;
};

inline std::vector<std::uint8_t> encode_sylf(const FrameMatrix& fm, const std::string& source_name) {
    using detail::put_le;
    validate(fm);
    std::vector<std::uint8_t> out;
    out.reserve(kSylfFixedHeaderBytes + source_name.size() + fm.data.size() * 4);
    out.insert(out.end(), kSylfMagic, kSylfMagic + 4);
    put_le<std::uint32_t>(out, kSylfVersion);
    put_le<std::uint32_t>(out, fm.dim);
    put_le<std::uint64_t>(out, fm.num_frames);
    put_le<double>(out, fm.hop_seconds);
    put_le<double>(out, fm.offset_seconds);
    put_le<std::uint32_t>(out, static_cast<std::uint32_t>(source_name.size()));
    out.insert(out.end(), source_name.begin(), source_name.end());
    if constexpr (std::endian::native == std::endian::little) {
        const auto* raw = reinterpret_cast<const std::uint8_t*>(fm.data.data());
        out.insert(out.end(), raw, raw + fm.data.size() * sizeof(float));
    } else {
        for (float v : fm.data) put_le<float>(out, v);
    }
    return out;
}

inline SylfFile decode_sylf(std::span<const std::uint8_t> b) {
    using detail::get_le;
    if (b.size() < 4 || std::memcmp(b.data(), kSylfMagic, 4) != 0) throw FormatError("not a SYLF file");
    if (b.size() < 8) throw FormatError("truncated header");
    const auto version = get_le<std::uint32_t>(b, 4);
    if (version != kSylfVersion) throw FormatError("unsupported version " + std::to_string(version));
    if (b.size() < kSylfFixedHeaderBytes) throw FormatError("truncated header");

    SylfFile file;
    FrameMatrix& fm = file.frames;
    fm.dim = get_le<std::uint32_t>(b, 8);
    fm.num_frames = get_le<std::uint64_t>(b, 12);
    fm.hop_seconds = get_le<double>(b, 20);
    fm.offset_seconds = get_le<double>(b, 28);
    const auto name_len = get_le<std::uint32_t>(b, 36);
    if (b.size() - kSylfFixedHeaderBytes < name_len) throw FormatError("truncated header");
    file.source_name.assign(reinterpret_cast<const char*>(b.data() + kSylfFixedHeaderBytes), name_len);
    if (fm.dim == 0) throw FormatError("invalid header: dim is zero");

    const std::size_t payload_off = kSylfFixedHeaderBytes + name_len;
    const std::size_t available = b.size() - payload_off;
    // Guard the multiplication against absurd header values.
    if (fm.num_frames > available / 4 / fm.dim) throw FormatError("truncated payload");
    const std::size_t count = static_cast<std::size_t>(fm.num_frames) * fm.dim;
    if (available != count * 4) throw FormatError("trailing bytes after payload");
    fm.data.resize(count);
    if constexpr (std::endian::native == std::endian::little) {
        if (count != 0) std::memcpy(fm.data.data(), b.data() + payload_off, count * 4);
    } else {
        for (std::size_t i = 0; i < count; ++i) fm.data[i] = get_le<float>(b, payload_off + 4 * i);
    }
    try {
        validate(fm);
    } catch (const ParameterError& e) {
        throw FormatError(std::string("invalid SYLF contents: ") + e.what());
    }
    return file;
}

inline void write_frames(const FrameMatrix& fm, const std::string& source_name, const std::string& path) {
    detail::write_file(path, encode_sylf(fm, source_name));
}

inline SylfFile read_frames(const std::string& path) {
    const auto bytes = detail::read_file(path);
    try {
        return decode_sylf(bytes);
    } catch (const FormatError& e) {
        throw FormatError("'" + path + "': " + e.what());
    }
}

}  // namespace sylsep
