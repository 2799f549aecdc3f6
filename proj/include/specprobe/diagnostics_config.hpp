#pragma once

#include <cstddef>
#include <string>

namespace specprobe {

/// Half-open interval [lo, hi) of normalized radial frequency (cycles/sample).
struct FrequencyRange {
    double lo = 0.0;
    double hi = 0.5;

    bool contains(double r) const noexcept { return r >= lo && r < hi; }
    friend bool operator==(const FrequencyRange&, const FrequencyRange&) = default;
};

enum class DcPolicy { Exclude, Include };

/// Binning and fitting knobs shared by every diagnostic. None of these
/// values is canonical; the fingerprint is stamped on every record so
/// results computed under different settings are never mixed silently.
struct DiagnosticsConfig {
    std::size_t radial_bins = 32;
    std::size_t bwg_bands = 4;
    FrequencyRange hf_fit_range{0.25, 0.5};
    FrequencyRange mid_band{0.125, 0.375};
    std::size_t angular_bins = 16;
    double log_epsilon = 1e-12;
    DcPolicy dc_policy = DcPolicy::Exclude;

    /// Throws ValidationError when a range leaves [0, 0.5] or a count is < 2.
    void validate() const;

    /// Canonical text form, e.g. "kr=32;k=4;hf=0.25:0.5;...". Stable across releases.
    std::string canonical() const;

    /// 16 hex digits of FNV-1a-64 over canonical().
    std::string fingerprint() const;

    friend bool operator==(const DiagnosticsConfig&, const DiagnosticsConfig&) = default;
};

}  // namespace specprobe
