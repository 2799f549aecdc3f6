#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "specprobe/diagnostics_config.hpp"
#include "specprobe/error.hpp"

namespace specprobe {

/// A scalar that may be undefined. An undefined metric keeps the reason it
/// could not be computed; it is never replaced by 0 or NaN.
struct Metric {
    std::optional<double> value;
    std::string reason;
    /// Number of views that contributed (1 for a single pair).
    std::size_t count = 1;

    static Metric of(double v) { return Metric{v, {}, 1}; }
    static Metric undefined(std::string why, std::size_t count = 0) { return Metric{std::nullopt, std::move(why), count}; }

    bool defined() const noexcept { return value.has_value(); }
};

/// The six diagnostics for one LR/HR pair (or the view-average for one scene).
struct DiagnosticsRecord {
    Metric ssc;
    Metric bwg;
    Metric hfss;
    Metric csc;
    Metric adc;
    Metric mcs_lr;
    Metric mcs_hr;
    Metric delta_mcs;
    std::string lr_id;
    std::string hr_id;
    DiagnosticsConfig config;
    /// > 1 for scene aggregates produced by aggregate_views().
    std::size_t views = 1;

    /// Checks range containment of every defined field and, for single-view
    /// records, delta_mcs == |mcs_hr - mcs_lr|. Throws ValidationError.
    void validate() const;
};

/// The six diagnostics in reporting order.
enum class Diagnostic { SSC, BWG, HFSS, CSC, ADC, DeltaMCS };

inline constexpr std::array<Diagnostic, 6> kAllDiagnostics{
    Diagnostic::SSC, Diagnostic::BWG, Diagnostic::HFSS, Diagnostic::CSC, Diagnostic::ADC, Diagnostic::DeltaMCS};

std::string_view to_string(Diagnostic d) noexcept;
const Metric& metric(const DiagnosticsRecord& r, Diagnostic d) noexcept;
Metric& metric(DiagnosticsRecord& r, Diagnostic d) noexcept;

/// True for diagnostics where a smaller value means better spectral preservation.
bool lower_is_better(Diagnostic d) noexcept;

// JSON array of records; keys ssc,bwg,hfss,csc,adc,mcs_lr,mcs_hr,delta_mcs,lr_id,hr_id,config
// in that order, followed by "reasons" (and "views"/"counts" for aggregates).
// Undefined metrics are null with their reason under "reasons".
std::string diagnostics_to_json(const std::vector<DiagnosticsRecord>& records);
std::vector<DiagnosticsRecord> diagnostics_from_json(std::string_view text);

void write_diagnostics_json(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path);
std::vector<DiagnosticsRecord> read_diagnostics_json(const std::filesystem::path& path);

}  // namespace specprobe
