#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "specprobe/diagnostics_record.hpp"
#include "specprobe/scene_metrics.hpp"

namespace specprobe {

/// Sample Pearson coefficient, clamped to [-1, 1]. Throws UndefinedMetric
/// (UndefinedCorrelation) for n < 3 or a constant series.
double pearson(std::span<const double> x, std::span<const double> y);

/// 1-based ranks; tied values share the average of the ranks they span.
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson on average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// Higher-is-better geometry score, -RPE_mean.
double ag_score(double rpe_mean);
/// Higher-is-better appearance score, -LPIPS.
double at_score(double lpips);

/// Mean of each metric over the views where it is defined. Throws
/// ValidationError on empty input or mixed config fingerprints.
DiagnosticsRecord aggregate_views(std::span<const DiagnosticsRecord> views);

enum class CorrelationMethod { Pearson, Spearman };
std::string_view to_string(CorrelationMethod m) noexcept;
std::optional<CorrelationMethod> parse_correlation_method(std::string_view text) noexcept;

double correlate(CorrelationMethod method, std::span<const double> x, std::span<const double> y);

enum class QualityMetric { PSNR, SSIM, LPIPS };
inline constexpr QualityMetric kAllQualityMetrics[] = {QualityMetric::PSNR, QualityMetric::SSIM, QualityMetric::LPIPS};
std::string_view to_string(QualityMetric m) noexcept;
double quality_value(const SceneRecord& r, QualityMetric m) noexcept;

/// One correlation value or the reason it has none.
struct CorrelationCell {
    std::optional<double> rho;
    std::size_t n = 0;
    std::string reason;

    bool defined() const noexcept { return rho.has_value(); }
};

struct JoinExclusion {
    std::string scene_id;
    std::string reason;
};

/// Scene id -> view-averaged diagnostics.
using SceneDiagnostics = std::map<std::string, DiagnosticsRecord>;

struct CorrelationReport {
    CorrelationMethod method = CorrelationMethod::Spearman;
    ProbeMode mode = ProbeMode::All;
    bool goodness_aligned = false;
    std::vector<Diagnostic> rows;
    std::vector<QualityMetric> cols;
    std::vector<CorrelationCell> cells;  // row-major rows x cols
    std::vector<std::string> scenes;     // joined scene ids, sorted
    std::vector<JoinExclusion> excluded;

    const CorrelationCell& cell(std::size_t row, std::size_t col) const { return cells[row * cols.size() + col]; }
};

/// Cross-scene correlation of every diagnostic with PSNR, SSIM and LPIPS for
/// the metric rows of `mode`. With `align_goodness`, BWG, HFSS, DeltaMCS and
/// LPIPS are negated first so that a positive rho always pairs better spectra
/// with better reconstructions. Scenes present in only one input are listed
/// in `excluded`. Throws ValidationError when fewer than 3 scenes join.
CorrelationReport correlate_scenes(const SceneDiagnostics& diagnostics, std::span<const SceneRecord> metrics,
                                   CorrelationMethod method, bool align_goodness,
                                   ProbeMode mode = ProbeMode::All);

struct GapEntry {
    Diagnostic diagnostic = Diagnostic::SSC;
    CorrelationCell rho_g;
    CorrelationCell rho_t;
    std::optional<double> gap;  // |rho_g| - |rho_t|
    std::string reason;
};

struct GapReport {
    CorrelationMethod method = CorrelationMethod::Spearman;
    std::vector<GapEntry> entries;
    std::vector<JoinExclusion> excluded;
};

/// Influence gap from explicit per-scene geometry and texture scores
/// (higher is better for both).
GapReport influence_gap(const SceneDiagnostics& diagnostics, const std::map<std::string, double>& geometry_scores,
                        const std::map<std::string, double>& texture_scores, CorrelationMethod method);

/// AG = -RPE_mean from Geometry-mode rows, AT = -LPIPS from Texture-mode rows.
GapReport influence_gap(const SceneDiagnostics& diagnostics, std::span<const SceneRecord> metrics,
                        CorrelationMethod method);

}  // namespace specprobe
