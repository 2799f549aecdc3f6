#pragma once

#include <cstddef>
#include <vector>

#include "specprobe/diagnostics_config.hpp"
#include "specprobe/feature_map.hpp"
#include "specprobe/fft.hpp"

namespace specprobe {

// Grids below are stored centred: row index i holds integer frequency
// i - floor(rows / 2), and likewise for columns, so DC sits at
// (floor(h / 2), floor(w / 2)). Normalized frequency is that integer over
// the axis length, giving u, v in [-0.5, 0.5) cycles/sample for any size.

/// Integer frequency at centred index `i` of an axis of length `n`.
inline long long centered_frequency(std::size_t i, std::size_t n) noexcept {
    return static_cast<long long>(i) - static_cast<long long>(n / 2);
}

/// Unshifted (FFT-order) index of integer frequency `f` on an axis of length `n`.
inline std::size_t fft_index(long long f, std::size_t n) noexcept {
    const auto m = static_cast<long long>(n);
    return static_cast<std::size_t>(((f % m) + m) % m);
}

/// Per-channel complex spectra, centred. values[(c * height + i) * width + j].
struct SpectrumGrid {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;
    std::vector<cdouble> values;

    const cdouble& at(std::size_t c, std::size_t i, std::size_t j) const noexcept {
        return values[(c * height + i) * width + j];
    }
};

/// Channel-mean |F|^2, centred, row-major height x width.
struct PowerSpectrum {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> values;

    double at(std::size_t i, std::size_t j) const noexcept { return values[i * width + j]; }
    double total() const noexcept;
    /// Sum over every point except DC.
    double total_non_dc() const noexcept;
};

/// Mean power per radial bin over r = sqrt(u^2 + v^2) in [0, 0.5].
/// Bin k covers [k dr, (k + 1) dr) with dr = 0.5 / bins; r == 0.5 lands in the
/// last bin and corner frequencies beyond 0.5 are discarded.
struct RadialSpectrum {
    std::vector<double> mean;
    std::vector<std::size_t> count;
    double bin_width = 0.0;
    bool dc_excluded = true;

    std::size_t bins() const noexcept { return mean.size(); }
    bool empty(std::size_t k) const noexcept { return count[k] == 0; }
    double center(std::size_t k) const noexcept { return (static_cast<double>(k) + 0.5) * bin_width; }
};

/// Total power per orientation bin, angle folded into [0, pi). DC is never counted.
struct AngularSpectrum {
    std::vector<double> energy;
    bool dc_excluded = true;

    std::size_t bins() const noexcept { return energy.size(); }
};

SpectrumGrid dft2(const FeatureMap& map);

PowerSpectrum power_spectrum(const SpectrumGrid& grid);
/// Same result as power_spectrum(dft2(map)) without holding every channel's spectrum.
PowerSpectrum power_spectrum(const FeatureMap& map);

RadialSpectrum radial_spectrum(const PowerSpectrum& p, const DiagnosticsConfig& cfg);
/// Energy per orientation bin over [0, pi), DC and points with r > 0.5 excluded.
AngularSpectrum angular_spectrum(const PowerSpectrum& p, const DiagnosticsConfig& cfg);

namespace detail {

/// Transforms the channels of a map two at a time (packed as re/im of one
/// complex FFT) and hands out each channel's spectrum in FFT order.
class ChannelTransformer {
public:
    explicit ChannelTransformer(const FeatureMap& map);

    /// Fills `first` with channel c0 and, when c0 + 1 exists, `second` with channel c0 + 1.
    /// Returns the number of channels produced (1 or 2).
    std::size_t transform_pair(std::size_t c0, std::vector<cdouble>& first, std::vector<cdouble>& second);

private:
    const FeatureMap& map_;
    Fft2dPlan plan_;
    std::vector<cdouble> packed_;
};

}  // namespace detail

}  // namespace specprobe
