#pragma once

// Brute-force reference implementations. Deliberately slow and written
// without reusing library code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "specprobe/feature_map.hpp"

namespace oracle {

using cplx = std::complex<double>;

// Direct double sum; result centred (row i holds frequency i - h/2).
inline std::vector<cplx> naive_dft2(const specprobe::FeatureMap& m, std::size_t c) {
    const std::size_t h = m.height(), w = m.width();
    std::vector<cplx> out(h * w);
    for (std::size_t i = 0; i < h; ++i) {
        const double fu = static_cast<double>(i) - static_cast<double>(h / 2);
        for (std::size_t j = 0; j < w; ++j) {
            const double fv = static_cast<double>(j) - static_cast<double>(w / 2);
            cplx acc = 0.0;
            for (std::size_t y = 0; y < h; ++y) {
                for (std::size_t x = 0; x < w; ++x) {
                    const double ph = -2.0 * std::numbers::pi * (fu * y / h + fv * x / w);
                    acc += static_cast<double>(m.at(y, x, c)) * cplx(std::cos(ph), std::sin(ph));
                }
            }
            out[i * w + j] = acc;
        }
    }
    return out;
}

inline double bilinear(double x) {
    x = std::abs(x);
    return x < 1.0 ? 1.0 - x : 0.0;
}

inline double keys(double x, double a = -0.5) {
    x = std::abs(x);
    if (x < 1.0) return (a + 2.0) * x * x * x - (a + 3.0) * x * x + 1.0;
    if (x < 2.0) return a * x * x * x - 5.0 * a * x * x + 8.0 * a * x - 4.0 * a;
    return 0.0;
}

inline double lanczos(double x, int taps = 3) {
    if (x == 0.0) return 1.0;
    if (std::abs(x) >= taps) return 0.0;
    const double px = std::numbers::pi * x;
    return taps * std::sin(px) * std::sin(px / taps) / (px * px);
}

enum class Interp { Nearest, Bilinear, Bicubic, Lanczos };

// Every output pixel evaluated on its own: 2D weights over a wide window of
// integer source positions, clamp-to-edge reads, normalised by the weight sum.
inline specprobe::FeatureMap resample(const specprobe::FeatureMap& in, Interp kind, std::size_t oh, std::size_t ow) {
    const std::size_t h = in.height(), w = in.width(), ch = in.channels();
    specprobe::FeatureMap out(oh, ow, ch);
    const auto clampi = [](long long v, std::size_t n) {
        return static_cast<std::size_t>(std::clamp<long long>(v, 0, static_cast<long long>(n) - 1));
    };
    const auto kernel = [&](double d) {
        switch (kind) {
            case Interp::Bilinear: return bilinear(d);
            case Interp::Bicubic: return keys(d);
            case Interp::Lanczos: return lanczos(d);
            default: return 0.0;
        }
    };
    for (std::size_t y = 0; y < oh; ++y) {
        for (std::size_t x = 0; x < ow; ++x) {
            for (std::size_t c = 0; c < ch; ++c) {
                if (kind == Interp::Nearest) {
                    const auto sy = static_cast<long long>(std::floor((y + 0.5) * h / oh));
                    const auto sx = static_cast<long long>(std::floor((x + 0.5) * w / ow));
                    out.at(y, x, c) = in.at(clampi(sy, h), clampi(sx, w), c);
                    continue;
                }
                const double sy = (y + 0.5) * static_cast<double>(h) / oh - 0.5;
                const double sx = (x + 0.5) * static_cast<double>(w) / ow - 0.5;
                double acc = 0.0, norm = 0.0;
                for (long long ky = -8; ky < static_cast<long long>(h) + 8; ++ky) {
                    const double wy = kernel(sy - ky);
                    if (wy == 0.0) continue;
                    for (long long kx = -8; kx < static_cast<long long>(w) + 8; ++kx) {
                        const double wx = kernel(sx - kx);
                        if (wx == 0.0) continue;
                        acc += wy * wx * in.at(clampi(ky, h), clampi(kx, w), c);
                        norm += wy * wx;
                    }
                }
                out.at(y, x, c) = static_cast<float>(acc / norm);
            }
        }
    }
    return out;
}

// rank_i = 1 + #{x_j < x_i} + (#{x_j == x_i} - 1) / 2
inline std::vector<double> ranks(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        double less = 0.0, equal = 0.0;
        for (double u : v) {
            less += u < v[i] ? 1.0 : 0.0;
            equal += u == v[i] ? 1.0 : 0.0;
        }
        r[i] = 1.0 + less + (equal - 1.0) / 2.0;
    }
    return r;
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

inline double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    return pearson(ranks(x), ranks(y));
}

inline specprobe::FeatureMap random_map(std::size_t h, std::size_t w, std::size_t c, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    specprobe::FeatureMap m(h, w, c);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            for (std::size_t k = 0; k < c; ++k) m.at(y, x, k) = dist(gen);
    return m;
}

}  // namespace oracle
