#include "specprobe/diagnostics_config.hpp"

#include <cmath>

#include "internal/text.hpp"
#include "specprobe/error.hpp"

namespace specprobe {

namespace {

void check_range(const FrequencyRange& r, const char* name) {
    if (!(r.lo >= 0.0 && r.lo < r.hi && r.hi <= 0.5)) {
        throw ValidationError(std::string(name) + " must satisfy 0 <= lo < hi <= 0.5");
    }
}

void check_count(std::size_t n, const char* name) {
    if (n < 2) {
        throw ValidationError(std::string(name) + " must be >= 2");
    }
}

}  // namespace

void DiagnosticsConfig::validate() const {
    check_count(radial_bins, "radial_bins");
    check_count(bwg_bands, "bwg_bands");
    check_count(angular_bins, "angular_bins");
    check_range(hf_fit_range, "hf_fit_range");
    check_range(mid_band, "mid_band");
    if (!(log_epsilon >= 0.0) || !std::isfinite(log_epsilon)) {
        throw ValidationError("log_epsilon must be finite and >= 0");
    }
}

std::string DiagnosticsConfig::canonical() const {
    using detail::format_double;
    std::string s;
    s += "kr=" + std::to_string(radial_bins);
    s += ";k=" + std::to_string(bwg_bands);
    s += ";hf=" + format_double(hf_fit_range.lo) + ":" + format_double(hf_fit_range.hi);
    s += ";mid=" + format_double(mid_band.lo) + ":" + format_double(mid_band.hi);
    s += ";m=" + std::to_string(angular_bins);
    s += ";eps=" + format_double(log_epsilon);
    s += ";dc=";
    s += dc_policy == DcPolicy::Exclude ? "exclude" : "include";
    return s;
}

std::string DiagnosticsConfig::fingerprint() const {
    return detail::hex64(detail::fnv1a64(canonical()));
}

}  // namespace specprobe
