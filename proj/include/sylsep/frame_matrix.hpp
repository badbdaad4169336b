#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sylsep/error.hpp"

namespace sylsep {

/// Time-indexed feature frames, frame-major. Frame t is centred at
/// offset_seconds + t * hop_seconds. The exchange format stores float; the
/// double instantiation exists for precision-sensitive analysis.
template <typename Scalar>
struct BasicFrameMatrix {
    std::uint32_t dim = 0;
    std::uint64_t num_frames = 0;
    double hop_seconds = 0.0;
    double offset_seconds = 0.0;
    std::vector<Scalar> data;  // num_frames * dim

    BasicFrameMatrix() = default;
    BasicFrameMatrix(std::uint32_t d, std::uint64_t frames, double hop, double offset)
        : dim(d), num_frames(frames), hop_seconds(hop), offset_seconds(offset), data(frames * d, Scalar{0}) {}

    [[nodiscard]] std::span<Scalar> row(std::uint64_t t) { return {data.data() + t * dim, dim}; }
    [[nodiscard]] std::span<const Scalar> row(std::uint64_t t) const { return {data.data() + t * dim, dim}; }
    [[nodiscard]] Scalar& at(std::uint64_t t, std::uint32_t j) { return data[t * dim + j]; }
    [[nodiscard]] Scalar at(std::uint64_t t, std::uint32_t j) const { return data[t * dim + j]; }

    [[nodiscard]] double center_seconds(std::uint64_t t) const {
        return offset_seconds + static_cast<double>(t) * hop_seconds;
    }

    friend bool operator==(const BasicFrameMatrix&, const BasicFrameMatrix&) = default;
};

using FrameMatrix = BasicFrameMatrix<float>;

template <typename Scalar>
void validate(const BasicFrameMatrix<Scalar>& fm) {
    if (fm.dim == 0) throw ParameterError("frame matrix: dim must be positive");
    if (!(fm.hop_seconds > 0.0) || !std::isfinite(fm.hop_seconds))
        throw ParameterError("frame matrix: hop must be positive");
    if (!(fm.offset_seconds >= 0.0) || !std::isfinite(fm.offset_seconds))
        throw ParameterError("frame matrix: offset must be nonnegative");
    if (fm.data.size() != fm.num_frames * fm.dim)
        throw ParameterError("frame matrix: data size does not match num_frames x dim");
    for (std::size_t i = 0; i < fm.data.size(); ++i) {
        if (!std::isfinite(fm.data[i]))
            throw ParameterError("frame matrix: non-finite entry at frame " + std::to_string(i / fm.dim));
    }
}

}  // namespace sylsep
