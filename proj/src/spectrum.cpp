#include "specprobe/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "specprobe/error.hpp"

namespace specprobe {

namespace detail {

ChannelTransformer::ChannelTransformer(const FeatureMap& map)
    : map_(map), plan_(map.height(), map.width()), packed_(map.pixels()) {}

std::size_t ChannelTransformer::transform_pair(std::size_t c0, std::vector<cdouble>& first,
                                               std::vector<cdouble>& second) {
    const std::size_t h = map_.height();
    const std::size_t w = map_.width();
    const std::size_t nc = map_.channels();
    const std::size_t n = h * w;
    const bool pair = c0 + 1 < nc;
    const auto src = map_.values();

    for (std::size_t i = 0; i < n; ++i) {
        const double re = src[i * nc + c0];
        const double im = pair ? src[i * nc + c0 + 1] : 0.0;
        packed_[i] = {re, im};
    }
    plan_.forward(packed_);

    first.resize(n);
    if (!pair) {
        std::copy(packed_.begin(), packed_.end(), first.begin());
        return 1;
    }
    second.resize(n);
    // Z = A + iB with A, B real-signal spectra:
    // A[k] = (Z[k] + conj Z[-k]) / 2,  B[k] = (Z[k] - conj Z[-k]) / 2i.
    for (std::size_t y = 0; y < h; ++y) {
        const std::size_t my = (h - y) % h;
        for (std::size_t x = 0; x < w; ++x) {
            const std::size_t mx = (w - x) % w;
            const cdouble z = packed_[y * w + x];
            const cdouble zm = std::conj(packed_[my * w + mx]);
            first[y * w + x] = 0.5 * (z + zm);
            const cdouble d = z - zm;
            second[y * w + x] = {0.5 * d.imag(), -0.5 * d.real()};
        }
    }
    return 2;
}

}  // namespace detail

namespace {

void accumulate_power(std::vector<double>& acc, const std::vector<cdouble>& spectrum) {
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] += std::norm(spectrum[i]);
    }
}

// FFT-order grid to centred order.
template <typename T>
void center_into(const std::vector<T>& raw, std::size_t h, std::size_t w, T* out) {
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t ri = fft_index(centered_frequency(i, h), h);
        for (std::size_t j = 0; j < w; ++j) {
            out[i * w + j] = raw[ri * w + fft_index(centered_frequency(j, w), w)];
        }
    }
}

}  // namespace

double PowerSpectrum::total() const noexcept {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

double PowerSpectrum::total_non_dc() const noexcept {
    return total() - at(height / 2, width / 2);
}

SpectrumGrid dft2(const FeatureMap& map) {
    if (map.empty()) {
        throw ValidationError("dft2 of an empty feature map");
    }
    SpectrumGrid grid;
    grid.height = map.height();
    grid.width = map.width();
    grid.channels = map.channels();
    grid.values.resize(map.size());

    detail::ChannelTransformer transformer(map);
    std::vector<cdouble> a;
    std::vector<cdouble> b;
    const std::size_t n = map.pixels();
    for (std::size_t c = 0; c < map.channels(); c += 2) {
        const std::size_t produced = transformer.transform_pair(c, a, b);
        center_into(a, grid.height, grid.width, &grid.values[c * n]);
        if (produced == 2) {
            center_into(b, grid.height, grid.width, &grid.values[(c + 1) * n]);
        }
    }
    return grid;
}

PowerSpectrum power_spectrum(const SpectrumGrid& grid) {
    PowerSpectrum p;
    p.height = grid.height;
    p.width = grid.width;
    const std::size_t n = grid.height * grid.width;
    p.values.assign(n, 0.0);
    for (std::size_t c = 0; c < grid.channels; ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            p.values[i] += std::norm(grid.values[c * n + i]);
        }
    }
    const double inv = 1.0 / static_cast<double>(grid.channels);
    for (double& v : p.values) v *= inv;
    return p;
}

PowerSpectrum power_spectrum(const FeatureMap& map) {
    if (map.empty()) {
        throw ValidationError("power spectrum of an empty feature map");
    }
    const std::size_t h = map.height();
    const std::size_t w = map.width();
    std::vector<double> acc(h * w, 0.0);
    detail::ChannelTransformer transformer(map);
    std::vector<cdouble> a;
    std::vector<cdouble> b;
    for (std::size_t c = 0; c < map.channels(); c += 2) {
        const std::size_t produced = transformer.transform_pair(c, a, b);
        accumulate_power(acc, a);
        if (produced == 2) accumulate_power(acc, b);
    }
    PowerSpectrum p;
    p.height = h;
    p.width = w;
    p.values.resize(h * w);
    center_into(acc, h, w, p.values.data());
    const double inv = 1.0 / static_cast<double>(map.channels());
    for (double& v : p.values) v *= inv;
    return p;
}

RadialSpectrum radial_spectrum(const PowerSpectrum& p, const DiagnosticsConfig& cfg) {
    cfg.validate();
    RadialSpectrum rs;
    const std::size_t bins = cfg.radial_bins;
    rs.bin_width = 0.5 / static_cast<double>(bins);
    rs.dc_excluded = cfg.dc_policy == DcPolicy::Exclude;
    std::vector<double> sum(bins, 0.0);
    rs.count.assign(bins, 0);

    const double h = static_cast<double>(p.height);
    const double w = static_cast<double>(p.width);
    for (std::size_t i = 0; i < p.height; ++i) {
        const auto fy = centered_frequency(i, p.height);
        const double v = static_cast<double>(fy) / h;
        for (std::size_t j = 0; j < p.width; ++j) {
            const auto fx = centered_frequency(j, p.width);
            if (fx == 0 && fy == 0 && rs.dc_excluded) continue;
            const double u = static_cast<double>(fx) / w;
            const double r = std::sqrt(u * u + v * v);
            if (r > 0.5) continue;
            const auto k = std::min(static_cast<std::size_t>(r / rs.bin_width), bins - 1);
            sum[k] += p.at(i, j);
            ++rs.count[k];
        }
    }
    rs.mean.assign(bins, 0.0);
    for (std::size_t k = 0; k < bins; ++k) {
        if (rs.count[k] > 0) rs.mean[k] = sum[k] / static_cast<double>(rs.count[k]);
    }
    return rs;
}

AngularSpectrum angular_spectrum(const PowerSpectrum& p, const DiagnosticsConfig& cfg) {
    cfg.validate();
    const std::size_t bins = cfg.angular_bins;
    const double width = std::numbers::pi / static_cast<double>(bins);
    AngularSpectrum as;
    as.energy.assign(bins, 0.0);
    for (std::size_t i = 0; i < p.height; ++i) {
        const auto fy = centered_frequency(i, p.height);
        const double v = static_cast<double>(fy) / static_cast<double>(p.height);
        for (std::size_t j = 0; j < p.width; ++j) {
            const auto fx = centered_frequency(j, p.width);
            if (fx == 0 && fy == 0) continue;
            const double u = static_cast<double>(fx) / static_cast<double>(p.width);
            // Same Nyquist disk as the radial spectrum; the square's corners would
            // otherwise over-weight the diagonal orientations.
            if (u * u + v * v > 0.25) continue;
            double theta = std::atan2(v, u);
            if (theta < 0.0) theta += std::numbers::pi;
            if (theta >= std::numbers::pi) theta -= std::numbers::pi;
            const auto m = std::min(static_cast<std::size_t>(theta / width), bins - 1);
            as.energy[m] += p.at(i, j);
        }
    }
    return as;
}

}  // namespace specprobe
