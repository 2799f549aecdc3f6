#include "specprobe/diagnostics_record.hpp"

#include <cmath>
#include <json.hpp>

#include "internal/text.hpp"

namespace specprobe {

namespace {

using ojson = nlohmann::ordered_json;

struct FieldSpec {
    const char* key;
    Metric DiagnosticsRecord::*member;
    double lo;
    double hi;
};

constexpr double kInf = HUGE_VAL;

const std::array<FieldSpec, 8> kFields{{
    {"ssc", &DiagnosticsRecord::ssc, -1.0, 1.0},
    {"bwg", &DiagnosticsRecord::bwg, 0.0, 2.0},
    {"hfss", &DiagnosticsRecord::hfss, 0.0, kInf},
    {"csc", &DiagnosticsRecord::csc, 0.0, 1.0},
    {"adc", &DiagnosticsRecord::adc, -1.0, 1.0},
    {"mcs_lr", &DiagnosticsRecord::mcs_lr, 0.0, 1.0},
    {"mcs_hr", &DiagnosticsRecord::mcs_hr, 0.0, 1.0},
    {"delta_mcs", &DiagnosticsRecord::delta_mcs, 0.0, 1.0},
}};

ojson config_to_json(const DiagnosticsConfig& cfg) {
    ojson j;
    j["radial_bins"] = cfg.radial_bins;
    j["bands"] = cfg.bwg_bands;
    j["hf_range"] = {cfg.hf_fit_range.lo, cfg.hf_fit_range.hi};
    j["mid_range"] = {cfg.mid_band.lo, cfg.mid_band.hi};
    j["angular_bins"] = cfg.angular_bins;
    j["epsilon"] = cfg.log_epsilon;
    j["include_dc"] = cfg.dc_policy == DcPolicy::Include;
    j["fingerprint"] = cfg.fingerprint();
    return j;
}

DiagnosticsConfig config_from_json(const ojson& j) {
    DiagnosticsConfig cfg;
    cfg.radial_bins = j.at("radial_bins").get<std::size_t>();
    cfg.bwg_bands = j.at("bands").get<std::size_t>();
    cfg.hf_fit_range = {j.at("hf_range").at(0).get<double>(), j.at("hf_range").at(1).get<double>()};
    cfg.mid_band = {j.at("mid_range").at(0).get<double>(), j.at("mid_range").at(1).get<double>()};
    cfg.angular_bins = j.at("angular_bins").get<std::size_t>();
    cfg.log_epsilon = j.at("epsilon").get<double>();
    cfg.dc_policy = j.at("include_dc").get<bool>() ? DcPolicy::Include : DcPolicy::Exclude;
    cfg.validate();
    if (j.contains("fingerprint") && j["fingerprint"].get<std::string>() != cfg.fingerprint()) {
        throw ParseError("config fingerprint does not match its fields");
    }
    return cfg;
}

}  // namespace

void DiagnosticsRecord::validate() const {
    for (const auto& f : kFields) {
        const Metric& m = this->*f.member;
        if (m.defined() && !(*m.value >= f.lo && *m.value <= f.hi)) {
            throw ValidationError(std::string(f.key) + " = " + detail::format_double(*m.value) + " out of range");
        }
    }
    if (views == 1 && delta_mcs.defined() && mcs_lr.defined() && mcs_hr.defined() &&
        std::abs(*delta_mcs.value - std::abs(*mcs_hr.value - *mcs_lr.value)) > 1e-12) {
        throw ValidationError("delta_mcs != |mcs_hr - mcs_lr|");
    }
}

std::string_view to_string(Diagnostic d) noexcept {
    switch (d) {
        case Diagnostic::SSC: return "SSC";
        case Diagnostic::BWG: return "BWG";
        case Diagnostic::HFSS: return "HFSS";
        case Diagnostic::CSC: return "CSC";
        case Diagnostic::ADC: return "ADC";
        case Diagnostic::DeltaMCS: return "DeltaMCS";
    }
    return "?";
}

const Metric& metric(const DiagnosticsRecord& r, Diagnostic d) noexcept {
    switch (d) {
        case Diagnostic::SSC: return r.ssc;
        case Diagnostic::BWG: return r.bwg;
        case Diagnostic::HFSS: return r.hfss;
        case Diagnostic::CSC: return r.csc;
        case Diagnostic::ADC: return r.adc;
        case Diagnostic::DeltaMCS: return r.delta_mcs;
    }
    return r.ssc;
}

Metric& metric(DiagnosticsRecord& r, Diagnostic d) noexcept {
    return const_cast<Metric&>(metric(static_cast<const DiagnosticsRecord&>(r), d));
}

bool lower_is_better(Diagnostic d) noexcept {
    return d == Diagnostic::BWG || d == Diagnostic::HFSS || d == Diagnostic::DeltaMCS;
}

std::string diagnostics_to_json(const std::vector<DiagnosticsRecord>& records) {
    ojson arr = ojson::array();
    for (const auto& r : records) {
        ojson j;
        ojson reasons = ojson::object();
        for (const auto& f : kFields) {
            const Metric& m = r.*f.member;
            if (m.defined()) {
                j[f.key] = *m.value;
            } else {
                j[f.key] = nullptr;
                reasons[f.key] = m.reason;
            }
        }
        j["lr_id"] = r.lr_id;
        j["hr_id"] = r.hr_id;
        j["config"] = config_to_json(r.config);
        j["reasons"] = std::move(reasons);
        if (r.views != 1) {
            j["views"] = r.views;
            ojson counts;
            for (const auto& f : kFields) {
                counts[f.key] = (r.*f.member).count;
            }
            j["counts"] = std::move(counts);
        }
        arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
}

std::vector<DiagnosticsRecord> diagnostics_from_json(std::string_view text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid diagnostics JSON: ") + e.what());
    }
    if (doc.is_object()) {
        doc = ojson::array({doc});
    }
    if (!doc.is_array()) {
        throw ParseError("diagnostics JSON must be an array of records");
    }
    std::vector<DiagnosticsRecord> out;
    std::size_t row = 0;
    for (const auto& j : doc) {
        ++row;
        try {
            DiagnosticsRecord r;
            r.views = j.value("views", std::size_t{1});
            const ojson reasons = j.value("reasons", ojson::object());
            const ojson counts = j.value("counts", ojson::object());
            for (const auto& f : kFields) {
                const auto& v = j.at(f.key);
                Metric& m = r.*f.member;
                if (v.is_null()) {
                    m = Metric::undefined(reasons.value(f.key, std::string("undefined")), 0);
                } else {
                    m = Metric::of(v.get<double>());
                }
                if (counts.contains(f.key)) {
                    m.count = counts[f.key].get<std::size_t>();
                }
            }
            r.lr_id = j.at("lr_id").get<std::string>();
            r.hr_id = j.at("hr_id").get<std::string>();
            r.config = config_from_json(j.at("config"));
            r.validate();
            out.push_back(std::move(r));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("diagnostics record " + std::to_string(row) + ": " + e.what(), row);
        } catch (const ValidationError& e) {
            throw ParseError("diagnostics record " + std::to_string(row) + ": " + e.what(), row);
        }
    }
    return out;
}

void write_diagnostics_json(const std::vector<DiagnosticsRecord>& records, const std::filesystem::path& path) {
    detail::write_text_file(path.string(), diagnostics_to_json(records));
}

std::vector<DiagnosticsRecord> read_diagnostics_json(const std::filesystem::path& path) {
    return diagnostics_from_json(detail::read_text_file(path.string()));
}

}  // namespace specprobe
