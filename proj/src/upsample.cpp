#include "specprobe/upsample.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "specprobe/error.hpp"

namespace specprobe {

namespace {

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = std::numbers::pi * x;
    return std::sin(px) / px;
}

// Tap table for one axis: output j uses taps [start[j], start[j+1]).
struct AxisTaps {
    std::vector<std::size_t> start;
    std::vector<std::size_t> index;
    std::vector<double> weight;
};

AxisTaps build_taps(const UpsampleMethod& method, std::size_t in, std::size_t out) {
    AxisTaps taps;
    taps.start.reserve(out + 1);
    const double scale = static_cast<double>(in) / static_cast<double>(out);
    const auto last = static_cast<long long>(in) - 1;
    const auto clamp = [last](long long i) { return static_cast<std::size_t>(std::clamp(i, 0LL, last)); };

    for (std::size_t j = 0; j < out; ++j) {
        taps.start.push_back(taps.index.size());
        if (method.kind == UpsampleKind::Nearest) {
            const auto i = static_cast<long long>(std::floor((static_cast<double>(j) + 0.5) * scale));
            taps.index.push_back(clamp(i));
            taps.weight.push_back(1.0);
            continue;
        }
        const double src = (static_cast<double>(j) + 0.5) * scale - 0.5;
        const auto base = static_cast<long long>(std::floor(src));
        const int s = method.support();
        const std::size_t first = taps.index.size();
        double total = 0.0;
        for (long long i = base - s + 1; i <= base + s; ++i) {
            const double w = kernel_weight(method, src - static_cast<double>(i));
            if (w == 0.0) continue;
            taps.index.push_back(clamp(i));
            taps.weight.push_back(w);
            total += w;
        }
        for (std::size_t t = first; t < taps.weight.size(); ++t) {
            taps.weight[t] /= total;
        }
    }
    taps.start.push_back(taps.index.size());
    return taps;
}

}  // namespace

std::string_view to_string(UpsampleKind kind) noexcept {
    switch (kind) {
        case UpsampleKind::NSM: return "nsm";
        case UpsampleKind::Nearest: return "nearest";
        case UpsampleKind::Bilinear: return "bilinear";
        case UpsampleKind::Bicubic: return "bicubic";
        case UpsampleKind::Lanczos: return "lanczos";
    }
    return "?";
}

std::optional<UpsampleKind> parse_upsample_kind(std::string_view text) noexcept {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    for (auto k : {UpsampleKind::NSM, UpsampleKind::Nearest, UpsampleKind::Bilinear, UpsampleKind::Bicubic,
                   UpsampleKind::Lanczos}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

void UpsampleMethod::validate() const {
    if (lanczos_taps < 1) {
        throw ValidationError("lanczos_taps must be >= 1");
    }
    if (!(bicubic_a >= -1.0 && bicubic_a < 0.0)) {
        throw ValidationError("bicubic_a must lie in [-1, 0)");
    }
}

int UpsampleMethod::support() const noexcept {
    switch (kind) {
        case UpsampleKind::Bilinear: return 1;
        case UpsampleKind::Bicubic: return 2;
        case UpsampleKind::Lanczos: return lanczos_taps;
        default: return 0;
    }
}

double kernel_weight(const UpsampleMethod& method, double x) {
    const double ax = std::abs(x);
    switch (method.kind) {
        case UpsampleKind::NSM:
            throw ContractError("NSM is not an interpolating kernel");
        case UpsampleKind::Nearest:
            return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
        case UpsampleKind::Bilinear:
            return std::max(0.0, 1.0 - ax);
        case UpsampleKind::Bicubic: {
            // Keys cubic convolution kernel.
            const double a = method.bicubic_a;
            if (ax < 1.0) return ((a + 2.0) * ax - (a + 3.0)) * ax * ax + 1.0;
            if (ax < 2.0) return ((a * ax - 5.0 * a) * ax + 8.0 * a) * ax - 4.0 * a;
            return 0.0;
        }
        case UpsampleKind::Lanczos: {
            const double taps = method.lanczos_taps;
            if (ax >= taps) return 0.0;
            if (ax == 0.0) return 1.0;
            if (ax == std::floor(ax)) return 0.0;
            return sinc(x) * sinc(x / taps);
        }
    }
    throw ContractError("unknown upsample kind");
}

FeatureMap nsm_pad(const FeatureMap& map, std::size_t target_h, std::size_t target_w) {
    if (target_h < map.height() || target_w < map.width()) {
        throw DimensionError("NSM target " + std::to_string(target_h) + "x" + std::to_string(target_w) +
                             " is smaller than source " + std::to_string(map.height()) + "x" +
                             std::to_string(map.width()) + "; NSM never crops");
    }
    if (target_h == map.height() && target_w == map.width()) {
        return map;
    }
    FeatureMap out(target_h, target_w, map.channels());
    const std::size_t row_len = map.width() * map.channels();
    const auto src = map.values();
    auto dst = out.values();
    for (std::size_t y = 0; y < map.height(); ++y) {
        std::copy_n(src.begin() + static_cast<std::ptrdiff_t>(y * row_len), row_len,
                    dst.begin() + static_cast<std::ptrdiff_t>(y * target_w * map.channels()));
    }
    return out;
}

FeatureMap upsample(const FeatureMap& map, const UpsampleMethod& method, std::size_t target_h, std::size_t target_w) {
    if (target_h == 0 || target_w == 0) {
        throw ValidationError("upsample target must be at least 1x1");
    }
    if (map.empty()) {
        throw ValidationError("cannot upsample an empty feature map");
    }
    method.validate();
    if (method.kind == UpsampleKind::NSM) {
        return nsm_pad(map, target_h, target_w);
    }

    const std::size_t h = map.height();
    const std::size_t w = map.width();
    const std::size_t c = map.channels();
    const AxisTaps xt = build_taps(method, w, target_w);
    const AxisTaps yt = build_taps(method, h, target_h);
    const auto src = map.values();

    // Horizontal pass into an h x target_w x c buffer, then vertical.
    std::vector<double> mid(h * target_w * c, 0.0);
    for (std::size_t y = 0; y < h; ++y) {
        for (std::size_t x = 0; x < target_w; ++x) {
            double* acc = &mid[(y * target_w + x) * c];
            for (std::size_t t = xt.start[x]; t < xt.start[x + 1]; ++t) {
                const float* row = &src[(y * w + xt.index[t]) * c];
                const double wt = xt.weight[t];
                for (std::size_t ch = 0; ch < c; ++ch) acc[ch] += wt * row[ch];
            }
        }
    }

    FeatureMap out(target_h, target_w, c);
    auto dst = out.values();
    std::vector<double> acc(target_w * c);
    for (std::size_t y = 0; y < target_h; ++y) {
        std::fill(acc.begin(), acc.end(), 0.0);
        for (std::size_t t = yt.start[y]; t < yt.start[y + 1]; ++t) {
            const double* row = &mid[yt.index[t] * target_w * c];
            const double wt = yt.weight[t];
            for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += wt * row[i];
        }
        float* out_row = &dst[y * target_w * c];
        for (std::size_t i = 0; i < acc.size(); ++i) out_row[i] = static_cast<float>(acc[i]);
    }
    return out;
}

}  // namespace specprobe
