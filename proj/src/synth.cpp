#include "specprobe/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "internal/rng.hpp"
#include "internal/text.hpp"
#include "specprobe/diagnostics.hpp"
#include "specprobe/error.hpp"
#include "specprobe/upsample.hpp"

namespace specprobe {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

long long signed_frequency(std::size_t k, std::size_t n) {
    return 2 * k < n ? static_cast<long long>(k) : static_cast<long long>(k) - static_cast<long long>(n);
}

void fill_channel(FeatureMap& map, std::size_t c, const std::vector<double>& plane) {
    auto values = map.values();
    for (std::size_t i = 0; i < plane.size(); ++i) {
        values[i * map.channels() + c] = static_cast<float>(plane[i]);
    }
}

}  // namespace

std::string_view to_string(SynthKind kind) noexcept {
    switch (kind) {
        case SynthKind::PowerLaw: return "powerlaw";
        case SynthKind::Grating: return "grating";
        case SynthKind::WhiteNoise: return "whitenoise";
        case SynthKind::Constant: return "constant";
    }
    return "?";
}

std::optional<SynthKind> parse_synth_kind(std::string_view text) noexcept {
    const std::string s = lower(text);
    for (auto k : {SynthKind::PowerLaw, SynthKind::Grating, SynthKind::WhiteNoise, SynthKind::Constant}) {
        if (s == to_string(k)) return k;
    }
    return std::nullopt;
}

void SynthSpec::validate() const {
    if (size < 4) throw ValidationError("synth size must be >= 4");
    if (channels < 1) throw ValidationError("synth channels must be >= 1");
    switch (kind) {
        case SynthKind::PowerLaw:
            if (!(beta >= 0.0) || !std::isfinite(beta)) throw ValidationError("powerlaw beta must be finite and >= 0");
            break;
        case SynthKind::Grating:
            if (!(freq > 0.0 && freq < 0.5)) throw ValidationError("grating freq must lie in (0, 0.5)");
            if (!(angle >= 0.0 && angle < std::numbers::pi)) throw ValidationError("grating angle must lie in [0, pi)");
            break;
        case SynthKind::Constant:
            if (!std::isfinite(value)) throw ValidationError("constant value must be finite");
            break;
        case SynthKind::WhiteNoise:
            break;
    }
}

namespace detail {

std::vector<cdouble> powerlaw_spectrum(std::size_t size, double beta, std::uint64_t channel_seed) {
    const std::size_t n = size;
    Rng rng(channel_seed);
    std::vector<cdouble> grid(n * n, cdouble{});
    std::vector<bool> done(n * n, false);
    const double exponent = -beta / 2.0;
    for (std::size_t ky = 0; ky < n; ++ky) {
        const std::size_t my = (n - ky) % n;
        const double fy = static_cast<double>(signed_frequency(ky, n)) / static_cast<double>(n);
        for (std::size_t kx = 0; kx < n; ++kx) {
            const std::size_t idx = ky * n + kx;
            if (done[idx]) continue;
            const std::size_t mirror = my * n + (n - kx) % n;
            done[idx] = done[mirror] = true;
            if (idx == 0) continue;  // DC stays zero
            const double fx = static_cast<double>(signed_frequency(kx, n)) / static_cast<double>(n);
            const double amplitude = std::pow(std::sqrt(fx * fx + fy * fy), exponent);
            if (mirror == idx) {
                // Self-conjugate (Nyquist) points must be real.
                grid[idx] = rng.uniform() < 0.5 ? amplitude : -amplitude;
                continue;
            }
            const double phase = 2.0 * std::numbers::pi * rng.uniform();
            grid[idx] = std::polar(amplitude, phase);
            grid[mirror] = std::conj(grid[idx]);
        }
    }
    return grid;
}

}  // namespace detail

FeatureMap generate(const SynthSpec& spec) {
    spec.validate();
    const std::size_t n = spec.size;
    FeatureMap map(n, n, spec.channels);

    switch (spec.kind) {
        case SynthKind::Constant:
            std::fill(map.values().begin(), map.values().end(), static_cast<float>(spec.value));
            return map;

        case SynthKind::WhiteNoise:
            for (std::size_t c = 0; c < spec.channels; ++c) {
                detail::Rng rng(detail::derive_seed(spec.seed, c));
                std::vector<double> plane(n * n);
                for (double& v : plane) v = rng.normal();
                fill_channel(map, c, plane);
            }
            return map;

        case SynthKind::Grating: {
            const double fu = spec.freq * std::cos(spec.angle);
            const double fv = spec.freq * std::sin(spec.angle);
            for (std::size_t c = 0; c < spec.channels; ++c) {
                detail::Rng rng(detail::derive_seed(spec.seed, c));
                const double phase = 2.0 * std::numbers::pi * rng.uniform();
                std::vector<double> plane(n * n);
                for (std::size_t y = 0; y < n; ++y) {
                    for (std::size_t x = 0; x < n; ++x) {
                        plane[y * n + x] = std::cos(2.0 * std::numbers::pi *
                                                        (fu * static_cast<double>(x) + fv * static_cast<double>(y)) +
                                                    phase);
                    }
                }
                fill_channel(map, c, plane);
            }
            return map;
        }

        case SynthKind::PowerLaw: {
            const Fft2dPlan plan(n, n);
            for (std::size_t c = 0; c < spec.channels; ++c) {
                auto grid = detail::powerlaw_spectrum(n, spec.beta, detail::derive_seed(spec.seed, c));
                double energy = 0.0;
                for (const auto& v : grid) energy += std::norm(v);
                plan.inverse(grid);
                // Unit variance: sum |f|^2 = sum |F|^2 / N for the 1/N-normalized inverse.
                const double scale = energy > 0.0 ? 1.0 / std::sqrt(energy) : 0.0;
                std::vector<double> plane(n * n);
                for (std::size_t i = 0; i < plane.size(); ++i) plane[i] = grid[i].real() * scale;
                fill_channel(map, c, plane);
            }
            return map;
        }
    }
    throw ValidationError("unknown synth kind");
}

std::string_view to_string(SuiteRelation r) noexcept {
    switch (r) {
        case SuiteRelation::SSC_drives_PSNR: return "ssc-psnr";
        case SuiteRelation::ADC_drives_RPE: return "adc-rpe";
        case SuiteRelation::NoiseOnly: return "noise";
    }
    return "?";
}

std::optional<SuiteRelation> parse_suite_relation(std::string_view text) noexcept {
    const std::string s = lower(text);
    if (s == "ssc-psnr" || s == "ssc_drives_psnr") return SuiteRelation::SSC_drives_PSNR;
    if (s == "adc-rpe" || s == "adc_drives_rpe") return SuiteRelation::ADC_drives_RPE;
    if (s == "noise" || s == "noiseonly" || s == "noise_only") return SuiteRelation::NoiseOnly;
    return std::nullopt;
}

namespace {

FeatureMap add_scaled(const FeatureMap& base, const FeatureMap& extra, double scale) {
    FeatureMap out = base;
    auto dst = out.values();
    const auto src = extra.values();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = static_cast<float>(static_cast<double>(dst[i]) + scale * static_cast<double>(src[i]));
    }
    return out;
}

constexpr UpsampleKind kSuiteMethods[] = {UpsampleKind::Bilinear, UpsampleKind::Bicubic, UpsampleKind::Lanczos,
                                          UpsampleKind::Nearest};

// LR: power-law field; HR: classical upsampling plus white noise of a
// scene-specific strength, so structural similarity varies across scenes.
std::pair<FeatureMap, FeatureMap> powerlaw_pair(const SuiteOptions& opt, std::size_t scene, double beta,
                                                double noise_level, std::uint64_t view_seed) {
    SynthSpec lr_spec{SynthKind::PowerLaw, opt.lr_size, opt.channels, beta, 0.0, 0.25, 0.0, view_seed};
    FeatureMap lr = generate(lr_spec);
    UpsampleMethod method{kSuiteMethods[scene % std::size(kSuiteMethods)]};
    FeatureMap hr = upsample(lr, method, opt.hr_size, opt.hr_size);
    SynthSpec noise_spec{SynthKind::WhiteNoise, opt.hr_size, opt.channels, 0.0, 0.0, 0.25, 0.0,
                         detail::splitmix64(view_seed)};
    return {lr, add_scaled(hr, generate(noise_spec), noise_level)};
}

// LR: grating plus a weak power-law background; HR: Lanczos upsampling plus a
// distractor grating at another orientation, so angular agreement varies.
std::pair<FeatureMap, FeatureMap> grating_pair(const SuiteOptions& opt, double angle, double distractor_angle,
                                               double distractor_level, std::uint64_t view_seed) {
    SynthSpec grating{SynthKind::Grating, opt.lr_size, opt.channels, 0.0, angle, 0.2, 0.0, view_seed};
    SynthSpec background{SynthKind::PowerLaw, opt.lr_size, opt.channels, 2.0, 0.0, 0.25, 0.0,
                         detail::splitmix64(view_seed)};
    FeatureMap lr = add_scaled(generate(grating), generate(background), 0.3);
    FeatureMap hr = upsample(lr, UpsampleMethod{UpsampleKind::Lanczos}, opt.hr_size, opt.hr_size);
    const double hr_freq = 0.2 * static_cast<double>(opt.lr_size) / static_cast<double>(opt.hr_size);
    SynthSpec distractor{SynthKind::Grating, opt.hr_size, opt.channels, 0.0, distractor_angle, hr_freq, 0.0,
                         detail::splitmix64(view_seed + 1)};
    return {lr, add_scaled(hr, generate(distractor), distractor_level)};
}

}  // namespace

SceneSuite make_scene_suite(std::size_t n_scenes, SuiteRelation relation, std::uint64_t seed,
                            const SuiteOptions& options) {
    if (n_scenes < 3) throw ValidationError("make_scene_suite needs at least 3 scenes");
    if (options.views_per_scene < 1) throw ValidationError("views_per_scene must be >= 1");
    if (options.lr_size < 4 || options.hr_size < options.lr_size) {
        throw ValidationError("suite sizes must satisfy 4 <= lr_size <= hr_size");
    }
    if (!(options.noise >= 0.0)) throw ValidationError("suite noise must be >= 0");
    options.config.validate();

    SceneSuite suite;
    suite.relation = relation;
    detail::Rng scene_rng(detail::derive_seed(seed, 0xA11CE));
    detail::Rng metric_rng(detail::derive_seed(seed, 0x3E7));

    for (std::size_t s = 0; s < n_scenes; ++s) {
        char id[32];
        std::snprintf(id, sizeof id, "scene%03zu", s);
        const std::string scene_id = id;

        // Scene-level generator parameters.
        const double beta = scene_rng.uniform(0.5, 3.0);
        const double noise_level = scene_rng.uniform(0.0, 1.0);
        const double angle = scene_rng.uniform(0.0, std::numbers::pi);
        const double distractor_angle =
            std::fmod(angle + scene_rng.uniform(std::numbers::pi / 6.0, 5.0 * std::numbers::pi / 6.0),
                      std::numbers::pi);
        const double distractor_level = scene_rng.uniform(0.0, 1.5);

        std::vector<DiagnosticsRecord> records;
        for (std::size_t v = 0; v < options.views_per_scene; ++v) {
            const std::uint64_t view_seed = detail::derive_seed(seed, s * 1000 + v + 1);
            auto [lr, hr] = relation == SuiteRelation::ADC_drives_RPE
                                ? grating_pair(options, angle, distractor_angle, distractor_level, view_seed)
                                : powerlaw_pair(options, s, beta, noise_level, view_seed);
            const std::string view_id = "v" + std::to_string(v);
            DiagnosticsRecord rec = diagnose_pair(lr, hr, options.config, scene_id + "__" + view_id + ".lr",
                                                  scene_id + "__" + view_id + ".hr");
            records.push_back(rec);
            suite.views.push_back({scene_id, view_id, std::move(lr), std::move(hr), std::move(rec)});
        }
        const DiagnosticsRecord scene = aggregate_views(records);
        suite.scene_diagnostics[scene_id] = scene;

        // Independent draws first so every relation consumes the same stream.
        SceneRecord all{scene_id, ProbeMode::All, metric_rng.uniform(18.0, 28.0), metric_rng.uniform(0.5, 0.95),
                        metric_rng.uniform(0.05, 0.5), std::nullopt};
        SceneRecord geo{scene_id, ProbeMode::Geometry, metric_rng.uniform(18.0, 28.0),
                        metric_rng.uniform(0.5, 0.95), metric_rng.uniform(0.05, 0.5), metric_rng.uniform(0.5, 5.0)};
        SceneRecord tex{scene_id, ProbeMode::Texture, metric_rng.uniform(18.0, 28.0),
                        metric_rng.uniform(0.5, 0.95), metric_rng.uniform(0.05, 0.5), std::nullopt};
        const double z = metric_rng.normal();

        const auto require = [&](const Metric& m, const char* name) {
            if (!m.defined()) {
                throw Error(std::string("suite generator produced undefined ") + name + " for " + scene_id + ": " +
                            m.reason);
            }
            return *m.value;
        };
        if (relation == SuiteRelation::SSC_drives_PSNR) {
            all.psnr = 10.0 * require(scene.ssc, "SSC") + 2.0 + options.noise * z;
        } else if (relation == SuiteRelation::ADC_drives_RPE) {
            geo.rpe_mean = std::exp(-2.0 * require(scene.adc, "ADC") + options.noise * z);
        }
        suite.metrics.push_back(all);
        suite.metrics.push_back(geo);
        suite.metrics.push_back(tex);
    }

    const std::string noise = detail::format_double(options.noise);
    switch (relation) {
        case SuiteRelation::SSC_drives_PSNR:
            suite.construction = "A.psnr = 10*SSC_scene + 2 + " + noise +
                                 "*N(0,1); all other metrics i.i.d. uniform; LR powerlaw beta~U(0.5,3), HR = "
                                 "classical upsample + white noise";
            break;
        case SuiteRelation::ADC_drives_RPE:
            suite.construction = "G.rpe_mean = exp(-2*ADC_scene + " + noise +
                                 "*N(0,1)); all other metrics i.i.d. uniform; LR grating + 0.3*powerlaw, HR = "
                                 "lanczos upsample + distractor grating";
            break;
        case SuiteRelation::NoiseOnly:
            suite.construction = "all metrics i.i.d. uniform, independent of diagnostics";
            break;
    }
    suite.construction += "; views_per_scene=" + std::to_string(options.views_per_scene) +
                          "; lr_size=" + std::to_string(options.lr_size) +
                          "; hr_size=" + std::to_string(options.hr_size) +
                          "; channels=" + std::to_string(options.channels) + "; seed=" + std::to_string(seed);
    return suite;
}

}  // namespace specprobe
