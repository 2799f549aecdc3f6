#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specprobe/diagnostics_config.hpp"
#include "specprobe/diagnostics_record.hpp"
#include "specprobe/feature_map.hpp"
#include "specprobe/fft.hpp"
#include "specprobe/scene_metrics.hpp"
#include "specprobe/stats.hpp"

namespace specprobe {

enum class SynthKind { PowerLaw, Grating, WhiteNoise, Constant };

std::string_view to_string(SynthKind kind) noexcept;
std::optional<SynthKind> parse_synth_kind(std::string_view text) noexcept;

/// Recipe for a square field with known spectral content.
struct SynthSpec {
    SynthKind kind = SynthKind::PowerLaw;
    std::size_t size = 64;
    std::size_t channels = 1;
    double beta = 2.0;   // PowerLaw: power ~ r^-beta
    double angle = 0.0;  // Grating: radians in [0, pi)
    double freq = 0.25;  // Grating: cycles/sample in (0, 0.5)
    double value = 0.0;  // Constant
    std::uint64_t seed = 0;

    void validate() const;
};

/// Deterministic given the recipe (seed included). Channels draw from independent
/// streams derived from (seed, channel), so channel c does not depend on the
/// channel count.
///   PowerLaw:   amplitude r^(-beta/2), uniform phases with Hermitian symmetry,
///               DC = 0, inverse DFT, scaled to unit variance per channel.
///   Grating:    cos(2 pi (fu x + fv y) + phase_c), (fu, fv) = freq (cos a, sin a).
///   WhiteNoise: i.i.d. N(0, 1).
///   Constant:   every element = value.
FeatureMap generate(const SynthSpec& spec);

namespace detail {
/// Hermitian-symmetric power-law spectrum in FFT order for one channel,
/// before the inverse transform (exposed for the symmetry tests).
std::vector<cdouble> powerlaw_spectrum(std::size_t size, double beta, std::uint64_t channel_seed);
}  // namespace detail

enum class SuiteRelation { SSC_drives_PSNR, ADC_drives_RPE, NoiseOnly };

std::string_view to_string(SuiteRelation r) noexcept;
std::optional<SuiteRelation> parse_suite_relation(std::string_view text) noexcept;

struct SuiteOptions {
    std::size_t views_per_scene = 2;
    std::size_t lr_size = 16;
    std::size_t hr_size = 64;
    std::size_t channels = 8;
    /// Standard deviation of the noise added to the driven metric.
    double noise = 0.0;
    DiagnosticsConfig config{};
};

struct SuiteView {
    std::string scene_id;
    std::string view_id;
    FeatureMap lr;
    FeatureMap hr;
    DiagnosticsRecord record;
};

/// Paired fixture: diagnostics computed on real generated LR/HR pairs and
/// scene metrics where one quality metric is a stated monotone function of
/// one scene-averaged diagnostic (plus seeded noise).
struct SceneSuite {
    SuiteRelation relation = SuiteRelation::NoiseOnly;
    std::vector<SuiteView> views;           // grouped by scene, views in order
    SceneDiagnostics scene_diagnostics;     // aggregate_views per scene
    std::vector<SceneRecord> metrics;       // A, G and T rows per scene
    std::string construction;               // human-readable recipe
};

/// Scene ids are "scene000", "scene001", ...; view ids "v0", "v1", ...
SceneSuite make_scene_suite(std::size_t n_scenes, SuiteRelation relation, std::uint64_t seed,
                            const SuiteOptions& options = {});

}  // namespace specprobe
