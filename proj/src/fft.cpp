#include "specprobe/fft.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "specprobe/error.hpp"

namespace specprobe {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
    std::size_t m = 1;
    while (m < n) m <<= 1;
    return m;
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
    if (n == 0) {
        throw ValidationError("FFT length must be >= 1");
    }
    if (pow2_) {
        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < n) ++bits;
        bitrev_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < bits; ++b) {
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
            }
            bitrev_[i] = r;
        }
        twiddle_.resize(n / 2);
        for (std::size_t k = 0; k < n / 2; ++k) {
            const double angle = -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
            twiddle_[k] = {std::cos(angle), std::sin(angle)};
        }
        return;
    }

    // Bluestein: X[k] = c[k] * sum_j (x[j] c[j]) conj(c[k - j]), c[k] = exp(-i pi k^2 / n).
    const std::size_t m = next_pow2(2 * n - 1);
    chirp_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        // k^2 mod 2n keeps the phase argument small.
        const std::size_t k2 = (k * k) % (2 * n);
        const double angle = -std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n);
        chirp_[k] = {std::cos(angle), std::sin(angle)};
    }
    inner_.emplace_back(m);
    chirp_filter_.assign(m, cdouble{});
    chirp_filter_[0] = std::conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
        chirp_filter_[k] = std::conj(chirp_[k]);
        chirp_filter_[m - k] = std::conj(chirp_[k]);
    }
    inner_.front().forward(chirp_filter_);
}

void FftPlan::forward(std::span<cdouble> data) const {
    if (data.size() != n_) {
        throw ValidationError("FFT buffer length mismatch");
    }
    if (n_ == 1) return;
    if (pow2_) {
        radix2(data);
    } else {
        bluestein(data);
    }
}

void FftPlan::inverse(std::span<cdouble> data) const {
    for (auto& v : data) v = std::conj(v);
    forward(data);
    for (auto& v : data) v = std::conj(v);
}

void FftPlan::radix2(std::span<cdouble> data) const {
    const std::size_t n = n_;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t j = bitrev_[i];
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        const std::size_t stride = n / len;
        for (std::size_t start = 0; start < n; start += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const cdouble w = twiddle_[k * stride];
                const cdouble a = data[start + k];
                const cdouble b = data[start + k + half];
                // Explicit complex multiply; std::complex operator* carries NaN/Inf recovery overhead.
                const cdouble t{w.real() * b.real() - w.imag() * b.imag(), w.real() * b.imag() + w.imag() * b.real()};
                data[start + k] = a + t;
                data[start + k + half] = a - t;
            }
        }
    }
}

void FftPlan::bluestein(std::span<cdouble> data) const {
    const FftPlan& inner = inner_.front();
    const std::size_t m = inner.size();
    std::vector<cdouble> work(m, cdouble{});
    for (std::size_t k = 0; k < n_; ++k) {
        work[k] = data[k] * chirp_[k];
    }
    inner.forward(work);
    for (std::size_t k = 0; k < m; ++k) {
        work[k] *= chirp_filter_[k];
    }
    inner.inverse(work);
    const double scale = 1.0 / static_cast<double>(m);
    for (std::size_t k = 0; k < n_; ++k) {
        data[k] = work[k] * chirp_[k] * scale;
    }
}

Fft2dPlan::Fft2dPlan(std::size_t rows, std::size_t cols) : along_row_(cols), along_col_(rows) {}

void Fft2dPlan::forward(std::span<cdouble> grid) const { apply(grid, false); }

void Fft2dPlan::inverse(std::span<cdouble> grid) const { apply(grid, true); }

void Fft2dPlan::apply(std::span<cdouble> grid, bool inverse) const {
    const std::size_t nr = rows();
    const std::size_t nc = cols();
    if (grid.size() != nr * nc) {
        throw ValidationError("2-D FFT buffer size mismatch");
    }
    for (std::size_t r = 0; r < nr; ++r) {
        auto row = grid.subspan(r * nc, nc);
        inverse ? along_row_.inverse(row) : along_row_.forward(row);
    }
    std::vector<cdouble> column(nr);
    for (std::size_t c = 0; c < nc; ++c) {
        for (std::size_t r = 0; r < nr; ++r) column[r] = grid[r * nc + c];
        inverse ? along_col_.inverse(column) : along_col_.forward(column);
        for (std::size_t r = 0; r < nr; ++r) grid[r * nc + c] = column[r];
    }
}

}  // namespace specprobe
