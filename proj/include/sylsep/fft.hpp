#pragma once

// Thin RAII wrapper over FFTW's real-to-complex / complex-to-real transforms.
// Consumers link fftw3 (the CMake target sylsep::sylsep does this).

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <new>
#include <span>

#include "sylsep/error.hpp"

namespace sylsep {

/// Forward and inverse real FFT of a fixed size. Holds its own aligned
/// buffers; not safe to use from several threads at once.
class RealFft {
public:
    explicit RealFft(std::size_t n) : n_(n) {
        if (n == 0) throw ParameterError("fft size must be positive");
        time_ = fftw_alloc_real(n);
        freq_ = fftw_alloc_complex(n / 2 + 1);
        if (time_ == nullptr || freq_ == nullptr) {
            release();
            throw std::bad_alloc();
        }
        forward_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), time_, freq_, FFTW_ESTIMATE);
        inverse_ = fftw_plan_dft_c2r_1d(static_cast<int>(n), freq_, time_, FFTW_ESTIMATE);
    }
    RealFft(const RealFft&) = delete;
    RealFft& operator=(const RealFft&) = delete;
    ~RealFft() { release(); }

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t bins() const noexcept { return n_ / 2 + 1; }

    /// Time-domain buffer (length size()). Fill before forward(); holds the
    /// unnormalized result after inverse().
    std::span<double> time() noexcept { return {time_, n_}; }

    /// Spectrum buffer (length bins()).
    std::span<std::complex<double>> spectrum() noexcept {
        return {reinterpret_cast<std::complex<double>*>(freq_), bins()};
    }

    void forward() noexcept { fftw_execute(forward_); }

    /// Inverse transform scaled by 1/n, so inverse(forward(x)) == x.
    void inverse() noexcept {
        fftw_execute(inverse_);
        const double scale = 1.0 / static_cast<double>(n_);
        for (std::size_t i = 0; i < n_; ++i) time_[i] *= scale;
    }

private:
    void release() noexcept {
        if (forward_ != nullptr) fftw_destroy_plan(forward_);
        if (inverse_ != nullptr) fftw_destroy_plan(inverse_);
        if (time_ != nullptr) fftw_free(time_);
        if (freq_ != nullptr) fftw_free(freq_);
        forward_ = inverse_ = nullptr;
        time_ = nullptr;
        freq_ = nullptr;
    }

    std::size_t n_;
    double* time_ = nullptr;
    fftw_complex* freq_ = nullptr;
    fftw_plan forward_ = nullptr;
    fftw_plan inverse_ = nullptr;
};

}  // namespace sylsep
