#pragma once

#include <cstddef>
#include <optional>
#include <string_view>

#include "specprobe/feature_map.hpp"

namespace specprobe {

enum class UpsampleKind { NSM, Nearest, Bilinear, Bicubic, Lanczos };

std::string_view to_string(UpsampleKind kind) noexcept;
std::optional<UpsampleKind> parse_upsample_kind(std::string_view text) noexcept;

struct UpsampleMethod {
    UpsampleKind kind = UpsampleKind::Bilinear;
    int lanczos_taps = 3;
    double bicubic_a = -0.5;

    /// lanczos_taps >= 1, bicubic_a in [-1, 0). Throws ValidationError.
    void validate() const;
    /// Half-width of the kernel support in source pixels (0 for NSM/Nearest).
    int support() const noexcept;
};

/// Zero-pads on the right and bottom up to (target_h, target_w). Never crops:
/// a smaller target throws DimensionError. Equal size returns a copy.
FeatureMap nsm_pad(const FeatureMap& map, std::size_t target_h, std::size_t target_w);

/// Per-channel separable resampling with half-pixel centres,
/// src = (dst + 0.5) * in / out - 0.5, clamp-to-edge taps and per-sample
/// weight renormalization. NSM dispatches to nsm_pad().
FeatureMap upsample(const FeatureMap& map, const UpsampleMethod& method, std::size_t target_h, std::size_t target_w);

/// 1-D interpolation kernel at offset x (source pixels). Nearest is the box
/// [-0.5, 0.5). Throws ContractError for NSM.
double kernel_weight(const UpsampleMethod& method, double x);

}  // namespace specprobe
