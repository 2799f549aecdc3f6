#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "specprobe/diagnostics_config.hpp"
#include "specprobe/diagnostics_record.hpp"
#include "specprobe/feature_map.hpp"
#include "specprobe/spectrum.hpp"

namespace specprobe {

// Every function here throws UndefinedMetric when its statistic has no value
// for the given input; diagnose_pair() turns those into undefined fields.

/// Pearson correlation of log(P + eps) over bins non-empty in both spectra.
double ssc(const RadialSpectrum& lr, const RadialSpectrum& hr, double log_epsilon = 1e-12);

struct BandEnergies {
    std::vector<double> energy;
};

/// Sums radial-bin means into cfg.bwg_bands equal-width bands by bin centre.
BandEnergies band_energies(const RadialSpectrum& rs, const DiagnosticsConfig& cfg);

/// L1 distance between the two band distributions after normalizing each to sum 1.
double bwg(const BandEnergies& lr, const BandEnergies& hr);

struct SlopeFit {
    double beta = 0.0;       // log P = -beta log r + intercept
    double intercept = 0.0;
    FrequencyRange range;
    std::size_t n_points = 0;
};

/// Least-squares line through (log r, log(P + eps)) at the centres of
/// non-empty, positive bins inside `range`. Needs at least 4 such bins.
SlopeFit fit_slope(const RadialSpectrum& rs, FrequencyRange range, double log_epsilon = 1e-12);

/// |beta_HR - beta_LR| over cfg.hf_fit_range.
double hfss(const RadialSpectrum& lr, const RadialSpectrum& hr, const DiagnosticsConfig& cfg);

/// Channel-mean normalized complex coherence. The HR spectrum is cropped to
/// the LR grid's central block (same integer frequencies, i.e. same cycles per
/// image), so lr dims must not exceed hr dims.
double csc(const FeatureMap& lr, const FeatureMap& hr, const DiagnosticsConfig& cfg);

/// Pearson correlation of the angular energy vectors.
double adc(const AngularSpectrum& lr, const AngularSpectrum& hr);

/// Share of radial energy in bins whose centres fall in cfg.mid_band.
double mcs(const RadialSpectrum& rs, const DiagnosticsConfig& cfg);

double delta_mcs(const RadialSpectrum& lr, const RadialSpectrum& hr, const DiagnosticsConfig& cfg);

/// Full chain for one pair. Throws DimensionError on a channel mismatch
/// before doing any work; every other failure becomes an undefined field.
DiagnosticsRecord diagnose_pair(const FeatureMap& lr, const FeatureMap& hr, const DiagnosticsConfig& cfg = {},
                                std::string lr_id = "lr", std::string hr_id = "hr");

}  // namespace specprobe
