#include "specprobe/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "specprobe/error.hpp"
#include "specprobe/stats.hpp"

namespace specprobe {

namespace {

void check_same_bins(const RadialSpectrum& a, const RadialSpectrum& b) {
    if (a.bins() != b.bins() || a.bin_width != b.bin_width) {
        throw ValidationError("radial spectra have different bin edges");
    }
}

// Coherence terms for one channel over the LR frequency support.
struct CoherenceTerms {
    cdouble cross{};
    double lr_energy = 0.0;
    double hr_energy = 0.0;
};

CoherenceTerms coherence_terms(const std::vector<cdouble>& lr, std::size_t h, std::size_t w,
                               const std::vector<cdouble>& hr, std::size_t hh, std::size_t hw, bool skip_dc) {
    CoherenceTerms t;
    for (std::size_t i = 0; i < h; ++i) {
        const auto fy = centered_frequency(i, h);
        const std::size_t ly = fft_index(fy, h) * w;
        const std::size_t hy = fft_index(fy, hh) * hw;
        for (std::size_t j = 0; j < w; ++j) {
            const auto fx = centered_frequency(j, w);
            if (skip_dc && fx == 0 && fy == 0) continue;
            const cdouble a = lr[ly + fft_index(fx, w)];
            const cdouble b = hr[hy + fft_index(fx, hw)];
            t.cross += a * std::conj(b);
            t.lr_energy += std::norm(a);
            t.hr_energy += std::norm(b);
        }
    }
    return t;
}

struct SpectralPass {
    PowerSpectrum lr_power;
    PowerSpectrum hr_power;
    Metric csc;
};

PowerSpectrum finish_power(const std::vector<double>& raw, std::size_t h, std::size_t w, std::size_t channels) {
    PowerSpectrum p;
    p.height = h;
    p.width = w;
    p.values.resize(h * w);
    const double inv = 1.0 / static_cast<double>(channels);
    for (std::size_t i = 0; i < h; ++i) {
        const std::size_t ri = fft_index(centered_frequency(i, h), h);
        for (std::size_t j = 0; j < w; ++j) {
            p.values[i * w + j] = raw[ri * w + fft_index(centered_frequency(j, w), w)] * inv;
        }
    }
    return p;
}

// One streaming pass over both maps, two channels at a time: accumulates both
// power spectra and the per-channel coherence without materializing every
// channel's spectrum (a 256x256x768 map would need ~800 MB of complex values).
SpectralPass spectral_pass(const FeatureMap& lr, const FeatureMap& hr, const DiagnosticsConfig& cfg, bool want_csc) {
    const std::size_t channels = lr.channels();
    const bool skip_dc = cfg.dc_policy == DcPolicy::Exclude;
    std::vector<double> lr_acc(lr.pixels(), 0.0);
    std::vector<double> hr_acc(hr.pixels(), 0.0);
    detail::ChannelTransformer lr_tf(lr);
    detail::ChannelTransformer hr_tf(hr);
    std::vector<cdouble> la;
    std::vector<cdouble> lb;
    std::vector<cdouble> ha;
    std::vector<cdouble> hb;

    double csc_sum = 0.0;
    std::size_t csc_channels = 0;
    const auto add_channel = [&](const std::vector<cdouble>& l, const std::vector<cdouble>& h) {
        for (std::size_t i = 0; i < lr_acc.size(); ++i) lr_acc[i] += std::norm(l[i]);
        for (std::size_t i = 0; i < hr_acc.size(); ++i) hr_acc[i] += std::norm(h[i]);
        if (!want_csc) return;
        const auto t = coherence_terms(l, lr.height(), lr.width(), h, hr.height(), hr.width(), skip_dc);
        if (t.lr_energy > 0.0 && t.hr_energy > 0.0) {
            csc_sum += std::min(1.0, std::abs(t.cross) / std::sqrt(t.lr_energy * t.hr_energy));
            ++csc_channels;
        }
    };

    for (std::size_t c = 0; c < channels; c += 2) {
        const std::size_t n = lr_tf.transform_pair(c, la, lb);
        hr_tf.transform_pair(c, ha, hb);
        add_channel(la, ha);
        if (n == 2) add_channel(lb, hb);
    }

    SpectralPass out;
    out.lr_power = finish_power(lr_acc, lr.height(), lr.width(), channels);
    out.hr_power = finish_power(hr_acc, hr.height(), hr.width(), channels);
    if (!want_csc) {
        out.csc = Metric::undefined("DimensionError: LR grid larger than HR grid");
    } else if (csc_channels == 0) {
        out.csc = Metric::undefined(UndefinedMetric(UndefinedReason::UndefinedCoherence,
                                                    "no channel has nonzero spectral energy on both sides")
                                        .what());
    } else {
        out.csc = Metric::of(csc_sum / static_cast<double>(csc_channels));
    }
    return out;
}

template <typename F>
Metric guarded(F&& compute) {
    try {
        return Metric::of(compute());
    } catch (const UndefinedMetric& e) {
        return Metric::undefined(e.what());
    }
}

}  // namespace

double ssc(const RadialSpectrum& lr, const RadialSpectrum& hr, double log_epsilon) {
    check_same_bins(lr, hr);
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = 0; k < lr.bins(); ++k) {
        if (lr.empty(k) || hr.empty(k)) continue;
        x.push_back(std::log(lr.mean[k] + log_epsilon));
        y.push_back(std::log(hr.mean[k] + log_epsilon));
    }
    if (x.size() < 3) {
        throw UndefinedMetric(UndefinedReason::UndefinedCorrelation,
                              "only " + std::to_string(x.size()) + " radial bins populated in both spectra");
    }
    return pearson(x, y);
}

BandEnergies band_energies(const RadialSpectrum& rs, const DiagnosticsConfig& cfg) {
    cfg.validate();
    const std::size_t bands = cfg.bwg_bands;
    const double band_width = 0.5 / static_cast<double>(bands);
    BandEnergies e;
    e.energy.assign(bands, 0.0);
    bool any = false;
    for (std::size_t k = 0; k < rs.bins(); ++k) {
        if (rs.empty(k)) continue;
        any = true;
        const auto b = std::min(static_cast<std::size_t>(rs.center(k) / band_width), bands - 1);
        e.energy[b] += rs.mean[k];
    }
    if (!any) {
        throw UndefinedMetric(UndefinedReason::UndefinedDistribution, "every radial bin is empty");
    }
    return e;
}

double bwg(const BandEnergies& lr, const BandEnergies& hr) {
    if (lr.energy.size() != hr.energy.size()) {
        throw ValidationError("band energies have different band counts");
    }
    double lr_total = 0.0;
    double hr_total = 0.0;
    for (double v : lr.energy) lr_total += v;
    for (double v : hr.energy) hr_total += v;
    if (!(lr_total > 0.0) || !(hr_total > 0.0)) {
        throw UndefinedMetric(UndefinedReason::UndefinedDistribution, "zero total band energy");
    }
    double d = 0.0;
    for (std::size_t k = 0; k < lr.energy.size(); ++k) {
        d += std::abs(lr.energy[k] / lr_total - hr.energy[k] / hr_total);
    }
    return std::clamp(d, 0.0, 2.0);
}

SlopeFit fit_slope(const RadialSpectrum& rs, FrequencyRange range, double log_epsilon) {
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t k = 0; k < rs.bins(); ++k) {
        const double r = rs.center(k);
        if (rs.empty(k) || !range.contains(r) || !(rs.mean[k] > 0.0)) continue;
        x.push_back(std::log(r));
        y.push_back(std::log(rs.mean[k] + log_epsilon));
    }
    if (x.size() < 4) {
        throw UndefinedMetric(UndefinedReason::FitUnderdetermined,
                              std::to_string(x.size()) + " usable radial bins in the fit range, need 4");
    }
    const double n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    const double slope = sxy / sxx;
    SlopeFit fit;
    fit.beta = -slope;
    fit.intercept = my - slope * mx;
    fit.range = range;
    fit.n_points = x.size();
    return fit;
}

double hfss(const RadialSpectrum& lr, const RadialSpectrum& hr, const DiagnosticsConfig& cfg) {
    check_same_bins(lr, hr);
    const auto fit_side = [&](const RadialSpectrum& rs, const char* side) {
        try {
            return fit_slope(rs, cfg.hf_fit_range, cfg.log_epsilon);
        } catch (const UndefinedMetric& e) {
            throw UndefinedMetric(e.reason(), std::string(side) + " side: " + e.what());
        }
    };
    const SlopeFit l = fit_side(lr, "LR");
    const SlopeFit h = fit_side(hr, "HR");
    return std::abs(h.beta - l.beta);
}

double csc(const FeatureMap& lr, const FeatureMap& hr, const DiagnosticsConfig& cfg) {
    cfg.validate();
    if (lr.channels() != hr.channels()) {
        throw DimensionError("channel mismatch: " + std::to_string(lr.channels()) + " vs " +
                             std::to_string(hr.channels()));
    }
    if (lr.height() > hr.height() || lr.width() > hr.width()) {
        throw DimensionError("CSC needs LR dims <= HR dims");
    }
    const SpectralPass pass = spectral_pass(lr, hr, cfg, true);
    if (!pass.csc.defined()) {
        throw UndefinedMetric(UndefinedReason::UndefinedCoherence, "either side is identically zero");
    }
    return *pass.csc.value;
}

double adc(const AngularSpectrum& lr, const AngularSpectrum& hr) {
    if (lr.bins() != hr.bins()) {
        throw ValidationError("angular spectra have different bin counts");
    }
    return pearson(lr.energy, hr.energy);
}

double mcs(const RadialSpectrum& rs, const DiagnosticsConfig& cfg) {
    double mid = 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < rs.bins(); ++k) {
        if (rs.empty(k)) continue;
        total += rs.mean[k];
        if (cfg.mid_band.contains(rs.center(k))) mid += rs.mean[k];
    }
    if (!(total > 0.0)) {
        throw UndefinedMetric(UndefinedReason::UndefinedRatio, "zero total radial energy");
    }
    return std::clamp(mid / total, 0.0, 1.0);
}

double delta_mcs(const RadialSpectrum& lr, const RadialSpectrum& hr, const DiagnosticsConfig& cfg) {
    return std::abs(mcs(hr, cfg) - mcs(lr, cfg));
}

DiagnosticsRecord diagnose_pair(const FeatureMap& lr, const FeatureMap& hr, const DiagnosticsConfig& cfg,
                                std::string lr_id, std::string hr_id) {
    cfg.validate();
    if (lr.channels() != hr.channels()) {
        throw DimensionError("channel mismatch: " + std::to_string(lr.channels()) + " vs " +
                             std::to_string(hr.channels()));
    }
    if (lr.empty() || hr.empty()) {
        throw ValidationError("diagnose_pair on an empty feature map");
    }
    const bool csc_possible = lr.height() <= hr.height() && lr.width() <= hr.width();
    const SpectralPass pass = spectral_pass(lr, hr, cfg, csc_possible);

    const RadialSpectrum lr_rad = radial_spectrum(pass.lr_power, cfg);
    const RadialSpectrum hr_rad = radial_spectrum(pass.hr_power, cfg);
    const AngularSpectrum lr_ang = angular_spectrum(pass.lr_power, cfg);
    const AngularSpectrum hr_ang = angular_spectrum(pass.hr_power, cfg);

    DiagnosticsRecord r;
    r.lr_id = std::move(lr_id);
    r.hr_id = std::move(hr_id);
    r.config = cfg;
    r.ssc = guarded([&] { return ssc(lr_rad, hr_rad, cfg.log_epsilon); });
    r.bwg = guarded([&] { return bwg(band_energies(lr_rad, cfg), band_energies(hr_rad, cfg)); });
    r.hfss = guarded([&] { return hfss(lr_rad, hr_rad, cfg); });
    r.csc = pass.csc;
    r.adc = guarded([&] { return adc(lr_ang, hr_ang); });
    r.mcs_lr = guarded([&] { return mcs(lr_rad, cfg); });
    r.mcs_hr = guarded([&] { return mcs(hr_rad, cfg); });
    if (r.mcs_lr.defined() && r.mcs_hr.defined()) {
        r.delta_mcs = Metric::of(std::abs(*r.mcs_hr.value - *r.mcs_lr.value));
    } else {
        r.delta_mcs = Metric::undefined(r.mcs_lr.defined() ? "HR side: " + r.mcs_hr.reason
                                                           : "LR side: " + r.mcs_lr.reason);
    }
    return r;
}

}  // namespace specprobe
