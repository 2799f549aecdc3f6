#include "specprobe/scene_metrics.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>
#include <utility>

#include "internal/text.hpp"
#include "specprobe/error.hpp"

namespace specprobe {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

double parse_number(std::string_view field, const char* column, std::size_t row) {
    field = detail::trim(field);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw ParseError("line " + std::to_string(row) + ": cannot parse " + column + " value '" +
                             std::string(field) + "'",
                         row);
    }
    return v;
}

}  // namespace

std::string_view to_string(ProbeMode mode) noexcept {
    switch (mode) {
        case ProbeMode::All: return "A";
        case ProbeMode::Geometry: return "G";
        case ProbeMode::Texture: return "T";
    }
    return "?";
}

std::optional<ProbeMode> parse_probe_mode(std::string_view text) noexcept {
    const std::string s = lower(detail::trim(text));
    if (s == "a" || s == "all") return ProbeMode::All;
    if (s == "g" || s == "geometry") return ProbeMode::Geometry;
    if (s == "t" || s == "texture") return ProbeMode::Texture;
    return std::nullopt;
}

void SceneRecord::validate() const {
    if (scene_id.empty()) throw ValidationError("scene id is empty");
    if (!std::isfinite(psnr)) throw ValidationError(scene_id + ": psnr must be finite");
    if (!(ssim >= 0.0 && ssim <= 1.0)) throw ValidationError(scene_id + ": ssim must lie in [0, 1]");
    if (!(lpips >= 0.0)) throw ValidationError(scene_id + ": lpips must be >= 0");
    if (rpe_mean && !(*rpe_mean >= 0.0)) throw ValidationError(scene_id + ": rpe_mean must be >= 0");
}

std::vector<SceneRecord> parse_scene_metrics(std::string_view text) {
    auto lines = detail::split(text, '\n');
    while (!lines.empty() && detail::trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) {
        throw ParseError("scene metrics CSV has no header");
    }

    constexpr std::array<const char*, 6> kColumns{"scene", "mode", "psnr", "ssim", "lpips", "rpe_mean"};
    std::array<int, 6> index{-1, -1, -1, -1, -1, -1};
    const auto header = detail::split(lines.front(), ',');
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string name = lower(detail::trim(header[i]));
        for (std::size_t k = 0; k < kColumns.size(); ++k) {
            if (name == kColumns[k]) index[k] = static_cast<int>(i);
        }
    }
    for (std::size_t k = 0; k < 5; ++k) {
        if (index[k] < 0) {
            throw ParseError(std::string("missing required column '") + kColumns[k] + "'");
        }
    }

    std::vector<SceneRecord> records;
    std::set<std::pair<std::string, ProbeMode>> seen;
    for (std::size_t li = 1; li < lines.size(); ++li) {
        const std::size_t row = li + 1;  // 1-based file line, header is line 1
        if (detail::trim(lines[li]).empty()) {
            throw ParseError("line " + std::to_string(row) + ": blank line", row);
        }
        const auto fields = detail::split(lines[li], ',');
        const auto field = [&](std::size_t k) -> std::string_view {
            const auto i = static_cast<std::size_t>(index[k]);
            if (i >= fields.size()) {
                if (k == 5) return {};
                throw ParseError("line " + std::to_string(row) + ": missing field " + kColumns[k], row);
            }
            return detail::trim(fields[i]);
        };

        SceneRecord r;
        r.scene_id = std::string(field(0));
        const auto mode = parse_probe_mode(field(1));
        if (!mode) {
            throw ParseError("line " + std::to_string(row) + ": unknown mode '" + std::string(field(1)) + "'", row);
        }
        r.probe_mode = *mode;
        r.psnr = parse_number(field(2), "psnr", row);
        r.ssim = parse_number(field(3), "ssim", row);
        r.lpips = parse_number(field(4), "lpips", row);
        if (index[5] >= 0 && !field(5).empty()) {
            r.rpe_mean = parse_number(field(5), "rpe_mean", row);
        }
        try {
            r.validate();
        } catch (const ValidationError& e) {
            throw ParseError("line " + std::to_string(row) + ": " + e.what(), row);
        }
        if (!seen.emplace(r.scene_id, r.probe_mode).second) {
            throw ParseError("line " + std::to_string(row) + ": duplicate (scene, mode) pair (" + r.scene_id + ", " +
                                 std::string(to_string(r.probe_mode)) + ")",
                             row);
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<SceneRecord> load_scene_metrics(const std::filesystem::path& path) {
    return parse_scene_metrics(detail::read_text_file(path.string()));
}

std::string scene_metrics_to_csv(const std::vector<SceneRecord>& records) {
    std::string out = "scene,mode,psnr,ssim,lpips,rpe_mean\n";
    for (const auto& r : records) {
        out += r.scene_id;
        out += ',';
        out += to_string(r.probe_mode);
        out += ',' + detail::format_double(r.psnr);
        out += ',' + detail::format_double(r.ssim);
        out += ',' + detail::format_double(r.lpips);
        out += ',';
        if (r.rpe_mean) out += detail::format_double(*r.rpe_mean);
        out += '\n';
    }
    return out;
}

void write_scene_metrics(const std::vector<SceneRecord>& records, const std::filesystem::path& path) {
    detail::write_text_file(path.string(), scene_metrics_to_csv(records));
}

}  // namespace specprobe
