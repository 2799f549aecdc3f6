#include "specprobe/feature_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "specprobe/error.hpp"

namespace specprobe {

namespace {

void check_dims(std::size_t h, std::size_t w, std::size_t c) {
    if (h == 0 || w == 0 || c == 0) {
        throw ValidationError("feature map dimensions must be >= 1, got " + std::to_string(h) + "x" +
                              std::to_string(w) + "x" + std::to_string(c));
    }
}

}  // namespace

FeatureMap::FeatureMap(std::size_t height, std::size_t width, std::size_t channels)
    : height_(height), width_(width), channels_(channels) {
    check_dims(height, width, channels);
    data_.assign(height * width * channels, 0.0F);
}

FeatureMap::FeatureMap(std::size_t height, std::size_t width, std::size_t channels, std::vector<float> data)
    : height_(height), width_(width), channels_(channels), data_(std::move(data)) {
    check_dims(height, width, channels);
    if (data_.size() != height * width * channels) {
        throw ValidationError("feature map data length " + std::to_string(data_.size()) + " != " +
                              std::to_string(height * width * channels));
    }
}

std::vector<double> FeatureMap::channel_plane(std::size_t c) const {
    std::vector<double> plane(pixels());
    for (std::size_t i = 0; i < plane.size(); ++i) {
        plane[i] = data_[i * channels_ + c];
    }
    return plane;
}

bool FeatureMap::all_finite() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](float v) { return std::isfinite(v); });
}

std::string_view to_string(UndefinedReason reason) noexcept {
    switch (reason) {
        case UndefinedReason::UndefinedCorrelation: return "UndefinedCorrelation";
        case UndefinedReason::UndefinedDistribution: return "UndefinedDistribution";
        case UndefinedReason::FitUnderdetermined: return "FitUnderdetermined";
        case UndefinedReason::UndefinedCoherence: return "UndefinedCoherence";
        case UndefinedReason::UndefinedRatio: return "UndefinedRatio";
        case UndefinedReason::InsufficientSamples: return "InsufficientSamples";
    }
    return "Undefined";
}

}  // namespace specprobe
