#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace specprobe {

/// Which Gaussian parameter groups the upstream probe regressed.
enum class ProbeMode { All, Geometry, Texture };

std::string_view to_string(ProbeMode mode) noexcept;
/// Accepts A/G/T and all/geometry/texture, case-insensitive.
std::optional<ProbeMode> parse_probe_mode(std::string_view text) noexcept;

/// Per-scene novel-view-synthesis quality for one probing mode.
struct SceneRecord {
    std::string scene_id;
    ProbeMode probe_mode = ProbeMode::All;
    double psnr = 0.0;
    double ssim = 0.0;
    double lpips = 0.0;
    std::optional<double> rpe_mean;

    /// psnr finite, ssim in [0, 1], lpips >= 0, rpe_mean >= 0. Throws ValidationError.
    void validate() const;
};

/// Parses `scene,mode,psnr,ssim,lpips,rpe_mean` CSV. Columns may appear in
/// any order; rpe_mean may be missing or empty. Row numbers in errors are
/// 1-based over data rows.
std::vector<SceneRecord> parse_scene_metrics(std::string_view text);
std::vector<SceneRecord> load_scene_metrics(const std::filesystem::path& path);

std::string scene_metrics_to_csv(const std::vector<SceneRecord>& records);
void write_scene_metrics(const std::vector<SceneRecord>& records, const std::filesystem::path& path);

}  // namespace specprobe
