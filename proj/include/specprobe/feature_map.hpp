#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace specprobe {

/// Dense H x W x C feature tensor, row-major and channel-last:
/// index = (y * width + x) * channels + c.
class FeatureMap {
public:
    FeatureMap() = default;

    /// Zero-filled map. Throws ValidationError on a zero dimension.
    FeatureMap(std::size_t height, std::size_t width, std::size_t channels);

    /// Takes ownership of `data`; its length must equal height * width * channels.
    FeatureMap(std::size_t height, std::size_t width, std::size_t channels, std::vector<float> data);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }
    std::size_t channels() const noexcept { return channels_; }
    std::size_t pixels() const noexcept { return height_ * width_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    float at(std::size_t y, std::size_t x, std::size_t c) const noexcept {
        return data_[(y * width_ + x) * channels_ + c];
    }
    float& at(std::size_t y, std::size_t x, std::size_t c) noexcept {
        return data_[(y * width_ + x) * channels_ + c];
    }

    std::span<const float> values() const noexcept { return data_; }
    std::span<float> values() noexcept { return data_; }

    /// Copy of one channel as a row-major height x width plane.
    std::vector<double> channel_plane(std::size_t c) const;

    /// True when every value is finite.
    bool all_finite() const noexcept;

    friend bool operator==(const FeatureMap&, const FeatureMap&) = default;

private:
    std::size_t height_ = 0;
    std::size_t width_ = 0;
    std::size_t channels_ = 0;
    std::vector<float> data_;
};

}  // namespace specprobe
