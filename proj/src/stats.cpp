#include "specprobe/stats.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>

#include "specprobe/error.hpp"

namespace specprobe {

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ValidationError("pearson: series lengths differ");
    }
    const std::size_t n = x.size();
    if (n < 3) {
        throw UndefinedMetric(UndefinedReason::UndefinedCorrelation, "need at least 3 samples, got " + std::to_string(n));
    }
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (!(sxx > 0.0) || !(syy > 0.0)) {
        throw UndefinedMetric(UndefinedReason::UndefinedCorrelation, "zero variance");
    }
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // positions i..j (0-based) share rank ((i + 1) + (j + 1)) / 2
        const double rank = static_cast<double>(i + j + 2) / 2.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw ValidationError("spearman: series lengths differ");
    }
    const auto rx = average_ranks(x);
    const auto ry = average_ranks(y);
    return pearson(rx, ry);
}

double ag_score(double rpe_mean) {
    if (!(rpe_mean >= 0.0)) {
        throw ValidationError("rpe_mean must be >= 0");
    }
    return -rpe_mean;
}

double at_score(double lpips) {
    if (!(lpips >= 0.0)) {
        throw ValidationError("lpips must be >= 0");
    }
    return -lpips;
}

DiagnosticsRecord aggregate_views(std::span<const DiagnosticsRecord> views) {
    if (views.empty()) {
        throw ValidationError("aggregate_views: no records");
    }
    const std::string fp = views.front().config.fingerprint();
    for (const auto& v : views) {
        if (v.config.fingerprint() != fp) {
            throw ValidationError("aggregate_views: mixed config fingerprints (" + fp + " vs " +
                                  v.config.fingerprint() + ")");
        }
    }
    if (views.size() == 1) {
        return views.front();
    }

    DiagnosticsRecord out;
    out.config = views.front().config;
    out.views = views.size();
    for (std::size_t i = 0; i < views.size(); ++i) {
        if (i > 0) {
            out.lr_id += ',';
            out.hr_id += ',';
        }
        out.lr_id += views[i].lr_id;
        out.hr_id += views[i].hr_id;
    }
    const auto average = [&](Metric DiagnosticsRecord::*member) {
        double sum = 0.0;
        std::size_t n = 0;
        std::string first_reason;
        for (const auto& v : views) {
            const Metric& m = v.*member;
            if (m.defined()) {
                sum += *m.value;
                ++n;
            } else if (first_reason.empty()) {
                first_reason = m.reason;
            }
        }
        if (n == 0) return Metric::undefined("undefined in every view: " + first_reason, 0);
        return Metric{sum / static_cast<double>(n), {}, n};
    };
    for (auto member : {&DiagnosticsRecord::ssc, &DiagnosticsRecord::bwg, &DiagnosticsRecord::hfss,
                        &DiagnosticsRecord::csc, &DiagnosticsRecord::adc, &DiagnosticsRecord::mcs_lr,
                        &DiagnosticsRecord::mcs_hr, &DiagnosticsRecord::delta_mcs}) {
        out.*member = average(member);
    }
    return out;
}

std::string_view to_string(CorrelationMethod m) noexcept {
    return m == CorrelationMethod::Pearson ? "pearson" : "spearman";
}

std::optional<CorrelationMethod> parse_correlation_method(std::string_view text) noexcept {
    std::string s(text);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "pearson") return CorrelationMethod::Pearson;
    if (s == "spearman") return CorrelationMethod::Spearman;
    return std::nullopt;
}

double correlate(CorrelationMethod method, std::span<const double> x, std::span<const double> y) {
    return method == CorrelationMethod::Pearson ? pearson(x, y) : spearman(x, y);
}

std::string_view to_string(QualityMetric m) noexcept {
    switch (m) {
        case QualityMetric::PSNR: return "PSNR";
        case QualityMetric::SSIM: return "SSIM";
        case QualityMetric::LPIPS: return "LPIPS";
    }
    return "?";
}

double quality_value(const SceneRecord& r, QualityMetric m) noexcept {
    switch (m) {
        case QualityMetric::PSNR: return r.psnr;
        case QualityMetric::SSIM: return r.ssim;
        case QualityMetric::LPIPS: return r.lpips;
    }
    return 0.0;
}

namespace {

// Correlates diagnostic `d` against per-scene scores over the scenes where
// both exist; `scenes` fixes the order.
CorrelationCell correlate_cell(const SceneDiagnostics& diagnostics, const std::map<std::string, double>& scores,
                               const std::vector<std::string>& scenes, Diagnostic d, double diag_sign,
                               CorrelationMethod method) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& s : scenes) {
        const Metric& m = metric(diagnostics.at(s), d);
        const auto it = scores.find(s);
        if (!m.defined() || it == scores.end()) continue;
        x.push_back(diag_sign * *m.value);
        y.push_back(it->second);
    }
    CorrelationCell cell;
    cell.n = x.size();
    try {
        cell.rho = correlate(method, x, y);
    } catch (const UndefinedMetric& e) {
        cell.reason = e.what();
    }
    return cell;
}

// Scenes present in both inputs (sorted), plus exclusions for the rest.
std::vector<std::string> join_scenes(const SceneDiagnostics& diagnostics, const std::set<std::string>& metric_scenes,
                                     std::vector<JoinExclusion>& excluded) {
    std::vector<std::string> joined;
    for (const auto& [id, rec] : diagnostics) {
        if (metric_scenes.count(id)) {
            joined.push_back(id);
        } else {
            excluded.push_back({id, "no scene-metrics row"});
        }
    }
    for (const auto& id : metric_scenes) {
        if (!diagnostics.count(id)) excluded.push_back({id, "no diagnostics"});
    }
    return joined;
}

}  // namespace

CorrelationReport correlate_scenes(const SceneDiagnostics& diagnostics, std::span<const SceneRecord> metrics,
                                   CorrelationMethod method, bool align_goodness, ProbeMode mode) {
    std::map<std::string, const SceneRecord*> rows;
    std::set<std::string> metric_scenes;
    for (const auto& r : metrics) {
        if (r.probe_mode != mode) continue;
        rows[r.scene_id] = &r;
        metric_scenes.insert(r.scene_id);
    }

    CorrelationReport report;
    report.method = method;
    report.mode = mode;
    report.goodness_aligned = align_goodness;
    report.rows.assign(kAllDiagnostics.begin(), kAllDiagnostics.end());
    report.cols.assign(std::begin(kAllQualityMetrics), std::end(kAllQualityMetrics));
    report.scenes = join_scenes(diagnostics, metric_scenes, report.excluded);
    if (report.scenes.size() < 3) {
        throw ValidationError("correlate_scenes: only " + std::to_string(report.scenes.size()) +
                              " scenes joined, need at least 3");
    }

    for (Diagnostic d : report.rows) {
        const double diag_sign = align_goodness && lower_is_better(d) ? -1.0 : 1.0;
        for (QualityMetric q : report.cols) {
            const double metric_sign = align_goodness && q == QualityMetric::LPIPS ? -1.0 : 1.0;
            std::map<std::string, double> scores;
            for (const auto& s : report.scenes) scores[s] = metric_sign * quality_value(*rows.at(s), q);
            report.cells.push_back(correlate_cell(diagnostics, scores, report.scenes, d, diag_sign, method));
        }
    }
    return report;
}

GapReport influence_gap(const SceneDiagnostics& diagnostics, const std::map<std::string, double>& geometry_scores,
                        const std::map<std::string, double>& texture_scores, CorrelationMethod method) {
    GapReport report;
    report.method = method;
    std::set<std::string> metric_scenes;
    for (const auto& [id, v] : geometry_scores) metric_scenes.insert(id);
    for (const auto& [id, v] : texture_scores) metric_scenes.insert(id);
    const auto scenes = join_scenes(diagnostics, metric_scenes, report.excluded);

    for (Diagnostic d : kAllDiagnostics) {
        GapEntry e;
        e.diagnostic = d;
        e.rho_g = correlate_cell(diagnostics, geometry_scores, scenes, d, 1.0, method);
        e.rho_t = correlate_cell(diagnostics, texture_scores, scenes, d, 1.0, method);
        if (e.rho_g.defined() && e.rho_t.defined()) {
            e.gap = std::abs(*e.rho_g.rho) - std::abs(*e.rho_t.rho);
        } else {
            e.reason = !e.rho_g.defined() ? "rho_G undefined: " + e.rho_g.reason : "rho_T undefined: " + e.rho_t.reason;
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

GapReport influence_gap(const SceneDiagnostics& diagnostics, std::span<const SceneRecord> metrics,
                        CorrelationMethod method) {
    std::map<std::string, double> geometry;
    std::map<std::string, double> texture;
    for (const auto& r : metrics) {
        if (r.probe_mode == ProbeMode::Geometry && r.rpe_mean) {
            geometry[r.scene_id] = ag_score(*r.rpe_mean);
        } else if (r.probe_mode == ProbeMode::Texture) {
            texture[r.scene_id] = at_score(r.lpips);
        }
    }
    return influence_gap(diagnostics, geometry, texture, method);
}

}  // namespace specprobe
