#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specprobe {

using cdouble = std::complex<double>;

/// Unnormalized 1-D DFT of a fixed length, X[k] = sum_n x[n] exp(-2 pi i k n / N).
/// Powers of two use an in-place iterative radix-2 transform; every other
/// length goes through Bluestein's chirp-z on a padded power-of-two plan.
class FftPlan {
public:
    explicit FftPlan(std::size_t n);

    std::size_t size() const noexcept { return n_; }

    void forward(std::span<cdouble> data) const;
    /// Unnormalized inverse (positive exponent); divide by N yourself.
    void inverse(std::span<cdouble> data) const;

private:
    void radix2(std::span<cdouble> data) const;
    void bluestein(std::span<cdouble> data) const;

    std::size_t n_ = 0;
    bool pow2_ = true;
    std::vector<std::size_t> bitrev_;
    std::vector<cdouble> twiddle_;  // exp(-2 pi i k / n), k < n/2

    // Bluestein state
    std::vector<cdouble> chirp_;          // exp(-i pi k^2 / n)
    std::vector<cdouble> chirp_filter_;   // FFT of the conjugate chirp, length m
    std::vector<FftPlan> inner_;          // single power-of-two plan of length m
};

/// Unnormalized forward 2-D DFT of a row-major rows x cols grid, in place.
class Fft2dPlan {
public:
    Fft2dPlan(std::size_t rows, std::size_t cols);

    std::size_t rows() const noexcept { return along_col_.size(); }
    std::size_t cols() const noexcept { return along_row_.size(); }

    void forward(std::span<cdouble> grid) const;
    void inverse(std::span<cdouble> grid) const;

private:
    void apply(std::span<cdouble> grid, bool inverse) const;

    FftPlan along_row_;  // length = cols
    FftPlan along_col_;  // length = rows
};

}  // namespace specprobe
