#include "commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include "internal/text.hpp"
#include "specprobe/diagnostics.hpp"
#include "specprobe/error.hpp"
#include "specprobe/fmap_io.hpp"
#include "specprobe/stats.hpp"
#include "specprobe/synth.hpp"
#include "specprobe/upsample.hpp"

#ifndef SPECPROBE_VERSION
#define SPECPROBE_VERSION "0.0.0"
#endif

namespace specprobe::cli {

namespace {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

/// Flag combination the parser cannot express; reported with exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input that parses but violates a data contract; exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Honors SOURCE_DATE_EPOCH so manifests can be made byte-reproducible.
std::string timestamp_utc() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    if (const char* env = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(env, nullptr, 10));
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct Manifest {
    std::string command;
    std::vector<std::string> args;
    ojson config = ojson::object();
    std::string fingerprint;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;

    void write(const fs::path& path) const {
        ojson j;
        j["command"] = command;
        j["tool_version"] = SPECPROBE_VERSION;
        j["timestamp"] = timestamp_utc();
        j["args"] = args;
        j["config"] = config;
        j["fingerprint"] = fingerprint;
        j["inputs"] = inputs;
        j["outputs"] = outputs;
        detail::write_text_file(path.string(), j.dump(2) + "\n");
    }
};

fs::path manifest_path_for(const fs::path& output) {
    return fs::path(output.string() + ".manifest.json");
}

std::string fingerprint_of(const std::string& canonical) {
    return detail::hex64(detail::fnv1a64(canonical));
}

ojson config_json(const DiagnosticsConfig& cfg) {
    ojson j;
    j["radial_bins"] = cfg.radial_bins;
    j["bands"] = cfg.bwg_bands;
    j["hf_range"] = {cfg.hf_fit_range.lo, cfg.hf_fit_range.hi};
    j["mid_range"] = {cfg.mid_band.lo, cfg.mid_band.hi};
    j["angular_bins"] = cfg.angular_bins;
    j["epsilon"] = cfg.log_epsilon;
    j["include_dc"] = cfg.dc_policy == DcPolicy::Include;
    j["canonical"] = cfg.canonical();
    return j;
}

std::string cell_text(const std::optional<double>& v) {
    return v ? detail::format_double(*v) : std::string();
}

ojson optional_json(const std::optional<double>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

FrequencyRange parse_range(const std::string& text, const char* flag) {
    const auto parts = detail::split(text, ':');
    if (parts.size() != 2) {
        throw UsageError(std::string(flag) + " expects LO:HI, got '" + text + "'");
    }
    try {
        return {std::stod(std::string(parts[0])), std::stod(std::string(parts[1]))};
    } catch (const std::exception&) {
        throw UsageError(std::string(flag) + " expects numeric LO:HI, got '" + text + "'");
    }
}

std::pair<std::size_t, std::size_t> parse_target(const std::string& text) {
    const auto pos = text.find_first_of("xX");
    try {
        if (pos == std::string::npos) throw std::invalid_argument("no x");
        std::size_t used = 0;
        const std::string hs = text.substr(0, pos);
        const std::string ws = text.substr(pos + 1);
        const long long h = std::stoll(hs, &used);
        if (used != hs.size()) throw std::invalid_argument("h");
        const long long w = std::stoll(ws, &used);
        if (used != ws.size()) throw std::invalid_argument("w");
        if (h < 1 || w < 1) throw std::invalid_argument("size");
        return {static_cast<std::size_t>(h), static_cast<std::size_t>(w)};
    } catch (const std::exception&) {
        throw UsageError("--target expects HxW with positive integers, e.g. 256x256; got '" + text + "'");
    }
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string kind;
    std::string suite;
    std::size_t size = 0;
    std::size_t channels = 1;
    std::uint64_t seed = 0;
    std::string out;
    std::optional<double> beta;
    std::optional<double> angle_deg;
    std::optional<double> freq;
    std::optional<double> value;
    std::size_t scenes = 10;
    std::size_t views = 2;
    double noise = 0.0;
    std::size_t lr_size = 16;
    std::size_t hr_size = 64;
};

void run_synth_field(const SynthArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const auto kind = parse_synth_kind(a.kind);
    if (!kind) throw UsageError("--kind must be one of powerlaw|grating|whitenoise|constant");
    if (a.size == 0) throw UsageError("--size is required");
    SynthSpec spec;
    spec.kind = *kind;
    spec.size = a.size;
    spec.channels = a.channels;
    spec.seed = a.seed;
    switch (*kind) {
        case SynthKind::PowerLaw:
            if (!a.beta) throw UsageError("--beta is required for --kind powerlaw");
            spec.beta = *a.beta;
            break;
        case SynthKind::Grating:
            if (!a.angle_deg) throw UsageError("--angle-deg is required for --kind grating");
            if (!a.freq) throw UsageError("--freq is required for --kind grating");
            spec.angle = *a.angle_deg * std::numbers::pi / 180.0;
            spec.freq = *a.freq;
            break;
        case SynthKind::Constant:
            if (!a.value) throw UsageError("--value is required for --kind constant");
            spec.value = *a.value;
            break;
        case SynthKind::WhiteNoise:
            break;
    }
    try {
        spec.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const FeatureMap map = generate(spec);
    write_fmap(map, a.out);

    Manifest m;
    m.command = "synth";
    m.args = argv;
    m.config["kind"] = std::string(to_string(spec.kind));
    m.config["size"] = spec.size;
    m.config["channels"] = spec.channels;
    m.config["seed"] = spec.seed;
    m.config["beta"] = spec.beta;
    m.config["angle"] = spec.angle;
    m.config["freq"] = spec.freq;
    m.config["value"] = spec.value;
    m.fingerprint = fingerprint_of(m.config.dump());
    m.outputs = {a.out};
    m.write(manifest_path_for(a.out));
    out << "wrote " << a.out << " (" << map.height() << "x" << map.width() << "x" << map.channels() << ")\n";
}

void run_synth_suite(const SynthArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const auto relation = parse_suite_relation(a.suite);
    if (!relation) throw UsageError("--suite must be one of ssc-psnr|adc-rpe|noise");
    SuiteOptions opt;
    opt.views_per_scene = a.views;
    opt.noise = a.noise;
    opt.lr_size = a.lr_size;
    opt.hr_size = a.hr_size;
    opt.channels = a.channels;
    SceneSuite suite;
    try {
        suite = make_scene_suite(a.scenes, *relation, a.seed, opt);
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }

    const fs::path dir(a.out);
    fs::create_directories(dir / "fmap");
    std::vector<std::string> outputs;
    for (const auto& v : suite.views) {
        const std::string stem = v.scene_id + "__" + v.view_id;
        const fs::path lr = dir / "fmap" / (stem + ".lr.fmap");
        const fs::path hr = dir / "fmap" / (stem + ".hr.fmap");
        write_fmap(v.lr, lr);
        write_fmap(v.hr, hr);
        outputs.push_back(lr.string());
        outputs.push_back(hr.string());
    }
    write_scene_metrics(suite.metrics, dir / "metrics.csv");
    outputs.push_back((dir / "metrics.csv").string());

    std::vector<DiagnosticsRecord> reference;
    for (const auto& [id, rec] : suite.scene_diagnostics) reference.push_back(rec);
    write_diagnostics_json(reference, dir / "reference_diagnostics.json");
    outputs.push_back((dir / "reference_diagnostics.json").string());

    ojson info;
    info["relation"] = std::string(to_string(suite.relation));
    info["scenes"] = a.scenes;
    info["seed"] = a.seed;
    info["construction"] = suite.construction;
    detail::write_text_file((dir / "suite.json").string(), info.dump(2) + "\n");
    outputs.push_back((dir / "suite.json").string());

    Manifest m;
    m.command = "synth";
    m.args = argv;
    m.config = config_json(opt.config);
    m.config["suite"] = info;
    m.fingerprint = opt.config.fingerprint();
    m.outputs = outputs;
    m.write(dir / "manifest.json");
    out << "wrote suite of " << a.scenes << " scenes to " << dir.string() << "\n";
}

// ---------------------------------------------------------------------------
// upsample

struct UpsampleArgs {
    std::string in;
    std::string out;
    std::string method;
    std::string target;
    int lanczos_taps = 3;
    double bicubic_a = -0.5;
};

void run_upsample(const UpsampleArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const auto kind = parse_upsample_kind(a.method);
    if (!kind) throw UsageError("--method must be one of nsm|nearest|bilinear|bicubic|lanczos");
    const auto [th, tw] = parse_target(a.target);
    UpsampleMethod method{*kind, a.lanczos_taps, a.bicubic_a};
    try {
        method.validate();
    } catch (const ValidationError& e) {
        throw UsageError(e.what());
    }
    const FeatureMap src = read_fmap(a.in);
    FeatureMap dst;
    try {
        dst = upsample(src, method, th, tw);
    } catch (const DimensionError& e) {
        throw DataError(e.what());
    }
    write_fmap(dst, a.out);

    Manifest m;
    m.command = "upsample";
    m.args = argv;
    m.config["method"] = std::string(to_string(method.kind));
    m.config["lanczos_taps"] = method.lanczos_taps;
    m.config["bicubic_a"] = method.bicubic_a;
    m.config["target"] = {th, tw};
    m.fingerprint = fingerprint_of(m.config.dump());
    m.inputs = {a.in};
    m.outputs = {a.out};
    m.write(manifest_path_for(a.out));
    out << "wrote " << a.out << " (" << th << "x" << tw << "x" << dst.channels() << ")\n";
}

// ---------------------------------------------------------------------------
// diagnose

struct ConfigArgs {
    std::size_t radial_bins = 32;
    std::size_t bands = 4;
    std::string hf_range = "0.25:0.5";
    std::string mid_range = "0.125:0.375";
    std::size_t angular_bins = 16;
    double epsilon = 1e-12;
    bool include_dc = false;

    DiagnosticsConfig resolve() const {
        DiagnosticsConfig cfg;
        cfg.radial_bins = radial_bins;
        cfg.bwg_bands = bands;
        cfg.hf_fit_range = parse_range(hf_range, "--hf-range");
        cfg.mid_band = parse_range(mid_range, "--mid-range");
        cfg.angular_bins = angular_bins;
        cfg.log_epsilon = epsilon;
        cfg.dc_policy = include_dc ? DcPolicy::Include : DcPolicy::Exclude;
        try {
            cfg.validate();
        } catch (const ValidationError& e) {
            throw UsageError(e.what());
        }
        return cfg;
    }
};

struct DiagnoseArgs {
    std::string lr;
    std::string hr;
    std::string out;
    ConfigArgs config;
};

std::string stem_of(const std::string& path) {
    return fs::path(path).stem().string();
}

void run_diagnose(const DiagnoseArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const DiagnosticsConfig cfg = a.config.resolve();
    const FeatureMap lr = read_fmap(a.lr);
    const FeatureMap hr = read_fmap(a.hr);
    DiagnosticsRecord rec;
    try {
        rec = diagnose_pair(lr, hr, cfg, stem_of(a.lr), stem_of(a.hr));
    } catch (const DimensionError& e) {
        throw DataError(e.what());
    }
    write_diagnostics_json({rec}, a.out);

    Manifest m;
    m.command = "diagnose";
    m.args = argv;
    m.config = config_json(cfg);
    m.fingerprint = cfg.fingerprint();
    m.inputs = {a.lr, a.hr};
    m.outputs = {a.out};
    m.write(manifest_path_for(a.out));
    out << "wrote " << a.out << "\n";
}

// ---------------------------------------------------------------------------
// correlate

struct CorrelateArgs {
    std::string diagnostics;
    std::string metrics;
    std::string method = "spearman";
    bool align_goodness = false;
    std::string mode = "all";
    std::string out;
};

std::string scene_of(const std::string& id) {
    const auto pos = id.find("__");
    return pos == std::string::npos ? id : id.substr(0, pos);
}

// Per-view records grouped by scene, in file-name order.
std::map<std::string, std::vector<DiagnosticsRecord>> load_views(const fs::path& input, std::vector<std::string>& inputs,
                                                                 std::ostream& err) {
    std::map<std::string, std::vector<DiagnosticsRecord>> groups;
    if (fs::is_directory(input)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(input)) {
            const auto& p = entry.path();
            const std::string name = p.filename().string();
            if (entry.is_regular_file() && p.extension() == ".json" &&
                name.find(".manifest.") == std::string::npos) {
                files.push_back(p);
            }
        }
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
            const std::string stem = p.stem().string();
            if (stem.find("__") == std::string::npos) {
                err << "warning: skipping " << p.string() << " (name is not SCENE__VIEW.json)\n";
                continue;
            }
            inputs.push_back(p.string());
            for (auto& r : read_diagnostics_json(p)) groups[scene_of(stem)].push_back(std::move(r));
        }
    } else {
        inputs.push_back(input.string());
        for (auto& r : read_diagnostics_json(input)) groups[scene_of(r.lr_id)].push_back(std::move(r));
    }
    return groups;
}

void run_correlate(const CorrelateArgs& a, const std::vector<std::string>& argv, std::ostream& out,
                   std::ostream& err) {
    const auto method = parse_correlation_method(a.method);
    if (!method) throw UsageError("--method must be spearman or pearson");
    const auto mode = parse_probe_mode(a.mode);
    if (!mode) throw UsageError("--mode must be all|geometry|texture");

    std::vector<std::string> inputs;
    const auto groups = load_views(a.diagnostics, inputs, err);
    inputs.push_back(a.metrics);
    const auto metrics = load_scene_metrics(a.metrics);

    SceneDiagnostics scenes;
    std::string fingerprint;
    for (const auto& [scene, views] : groups) {
        try {
            scenes[scene] = aggregate_views(views);
        } catch (const ValidationError& e) {
            throw DataError("scene " + scene + ": " + e.what());
        }
        const std::string fp = scenes[scene].config.fingerprint();
        if (!fingerprint.empty() && fp != fingerprint) {
            throw DataError("scenes were diagnosed under different configs (" + fingerprint + " vs " + fp + ")");
        }
        fingerprint = fp;
    }

    CorrelationReport corr;
    try {
        corr = correlate_scenes(scenes, metrics, *method, a.align_goodness, *mode);
    } catch (const ValidationError& e) {
        throw DataError(e.what());
    }
    const GapReport gap = influence_gap(scenes, metrics, *method);
    for (const auto& ex : corr.excluded) {
        err << "warning: scene " << ex.scene_id << " excluded from join: " << ex.reason << "\n";
    }

    // PREFIX.corr.csv
    std::string csv = "diagnostic";
    for (auto q : corr.cols) csv += "," + std::string(to_string(q));
    csv += "\n";
    for (std::size_t r = 0; r < corr.rows.size(); ++r) {
        csv += to_string(corr.rows[r]);
        for (std::size_t c = 0; c < corr.cols.size(); ++c) csv += "," + cell_text(corr.cell(r, c).rho);
        csv += "\n";
    }
    const std::string corr_path = a.out + ".corr.csv";
    detail::write_text_file(corr_path, csv);

    // PREFIX.gap.csv
    std::string gcsv = "diagnostic,rho_g,rho_t,gap,n_g,n_t\n";
    for (const auto& e : gap.entries) {
        gcsv += std::string(to_string(e.diagnostic)) + "," + cell_text(e.rho_g.rho) + "," + cell_text(e.rho_t.rho) +
                "," + cell_text(e.gap) + "," + std::to_string(e.rho_g.n) + "," + std::to_string(e.rho_t.n) + "\n";
    }
    const std::string gap_path = a.out + ".gap.csv";
    detail::write_text_file(gap_path, gcsv);

    // PREFIX.report.json
    ojson rep;
    rep["method"] = std::string(to_string(corr.method));
    rep["mode"] = std::string(to_string(corr.mode));
    rep["goodness_aligned"] = corr.goodness_aligned;
    rep["config_fingerprint"] = fingerprint;
    rep["scenes"] = corr.scenes;
    ojson excluded = ojson::array();
    for (const auto& ex : corr.excluded) excluded.push_back({{"scene", ex.scene_id}, {"reason", ex.reason}});
    rep["excluded"] = excluded;
    ojson cj;
    cj["rows"] = ojson::array();
    for (auto d : corr.rows) cj["rows"].push_back(std::string(to_string(d)));
    cj["cols"] = ojson::array();
    for (auto q : corr.cols) cj["cols"].push_back(std::string(to_string(q)));
    ojson rho = ojson::array();
    ojson ns = ojson::array();
    ojson reasons = ojson::array();
    for (std::size_t r = 0; r < corr.rows.size(); ++r) {
        ojson rr = ojson::array();
        ojson nr = ojson::array();
        ojson why = ojson::array();
        for (std::size_t c = 0; c < corr.cols.size(); ++c) {
            rr.push_back(optional_json(corr.cell(r, c).rho));
            nr.push_back(corr.cell(r, c).n);
            why.push_back(corr.cell(r, c).reason);
        }
        rho.push_back(rr);
        ns.push_back(nr);
        reasons.push_back(why);
    }
    cj["rho"] = rho;
    cj["n"] = ns;
    cj["reasons"] = reasons;
    rep["correlation"] = cj;
    ojson gj = ojson::array();
    for (const auto& e : gap.entries) {
        ojson ej;
        ej["diagnostic"] = std::string(to_string(e.diagnostic));
        ej["rho_g"] = optional_json(e.rho_g.rho);
        ej["rho_t"] = optional_json(e.rho_t.rho);
        ej["gap"] = optional_json(e.gap);
        ej["n_g"] = e.rho_g.n;
        ej["n_t"] = e.rho_t.n;
        ej["reason"] = e.reason;
        gj.push_back(ej);
    }
    rep["gap"] = gj;
    const std::string report_path = a.out + ".report.json";
    detail::write_text_file(report_path, rep.dump(2) + "\n");

    Manifest m;
    m.command = "correlate";
    m.args = argv;
    m.config["method"] = std::string(to_string(*method));
    m.config["mode"] = std::string(to_string(*mode));
    m.config["align_goodness"] = a.align_goodness;
    m.fingerprint = fingerprint;
    m.inputs = inputs;
    m.outputs = {corr_path, gap_path, report_path};
    m.write(fs::path(a.out + ".manifest.json"));
    out << "correlated " << corr.scenes.size() << " scenes -> " << corr_path << "\n";
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
    std::string report;
    std::string out;
};

void run_report(const ReportArgs& a, const std::vector<std::string>& argv, std::ostream& out) {
    const std::string text = detail::read_text_file(a.report);
    std::string csv = "diagnostic,metric,rho,n,aligned\n";
    std::string fingerprint;
    try {
        const ojson rep = ojson::parse(text);
        const bool aligned = rep.at("goodness_aligned").get<bool>();
        fingerprint = rep.value("config_fingerprint", std::string());
        const auto& cj = rep.at("correlation");
        const auto& rows = cj.at("rows");
        const auto& cols = cj.at("cols");
        const auto& rho = cj.at("rho");
        const auto& ns = cj.at("n");
        if (rho.size() != rows.size() || ns.size() != rows.size()) throw UsageError("matrix shape mismatch");
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rho.at(r).size() != cols.size() || ns.at(r).size() != cols.size()) {
                throw UsageError("matrix shape mismatch");
            }
            for (std::size_t c = 0; c < cols.size(); ++c) {
                const auto& v = rho.at(r).at(c);
                csv += rows.at(r).get<std::string>() + "," + cols.at(c).get<std::string>() + ",";
                if (!v.is_null()) csv += detail::format_double(v.get<double>());
                csv += "," + std::to_string(ns.at(r).at(c).get<std::size_t>());
                csv += aligned ? ",true\n" : ",false\n";
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("malformed report: ") + e.what());
    } catch (const UsageError& e) {
        throw UsageError(std::string("malformed report: ") + e.what());
    }
    detail::write_text_file(a.out, csv);

    Manifest m;
    m.command = "report";
    m.args = argv;
    m.fingerprint = fingerprint;
    m.inputs = {a.report};
    m.outputs = {a.out};
    m.write(manifest_path_for(a.out));
    out << "wrote " << a.out << "\n";
}

void add_config_flags(CLI::App* cmd, ConfigArgs& c) {
    cmd->add_option("--radial-bins", c.radial_bins, "Radial bins over r in [0, 0.5]")->capture_default_str();
    cmd->add_option("--bands", c.bands, "Equal-width bands for BWG")->capture_default_str();
    cmd->add_option("--hf-range", c.hf_range, "Slope-fit range LO:HI")->capture_default_str();
    cmd->add_option("--mid-range", c.mid_range, "Mid band LO:HI for MCS")->capture_default_str();
    cmd->add_option("--angular-bins", c.angular_bins, "Orientation bins over [0, pi)")->capture_default_str();
    cmd->add_option("--epsilon", c.epsilon, "Offset inside log()")->capture_default_str();
    cmd->add_flag("--include-dc", c.include_dc, "Keep the DC term in radial statistics and CSC");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral diagnostics for feature upsampling", "specprobe"};
    app.require_subcommand(1);
    app.set_version_flag("--version", SPECPROBE_VERSION);

    SynthArgs synth;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic field or a scene-suite fixture");
    synth_cmd->add_option("--kind", synth.kind, "powerlaw|grating|whitenoise|constant");
    synth_cmd->add_option("--suite", synth.suite, "ssc-psnr|adc-rpe|noise: write a scene-suite fixture directory");
    synth_cmd->add_option("--size", synth.size, "Square size in pixels");
    synth_cmd->add_option("--channels", synth.channels, "Channel count")->capture_default_str();
    synth_cmd->add_option("--seed", synth.seed, "64-bit seed")->required();
    synth_cmd->add_option("--out", synth.out, "Output FMAP (or directory with --suite)")->required();
    synth_cmd->add_option("--beta", synth.beta, "Power-law decay slope");
    synth_cmd->add_option("--angle-deg", synth.angle_deg, "Grating orientation in degrees, [0, 180)");
    synth_cmd->add_option("--freq", synth.freq, "Grating frequency, cycles/sample in (0, 0.5)");
    synth_cmd->add_option("--value", synth.value, "Constant fill value");
    synth_cmd->add_option("--scenes", synth.scenes, "Suite: number of scenes")->capture_default_str();
    synth_cmd->add_option("--views", synth.views, "Suite: views per scene")->capture_default_str();
    synth_cmd->add_option("--noise", synth.noise, "Suite: noise on the driven metric")->capture_default_str();
    synth_cmd->add_option("--lr-size", synth.lr_size, "Suite: LR size")->capture_default_str();
    synth_cmd->add_option("--hr-size", synth.hr_size, "Suite: HR size")->capture_default_str();

    UpsampleArgs up;
    auto* up_cmd = app.add_subcommand("upsample", "Resample an FMAP to a target size");
    up_cmd->add_option("--in", up.in, "Input FMAP")->required();
    up_cmd->add_option("--out", up.out, "Output FMAP")->required();
    up_cmd->add_option("--method", up.method, "nsm|nearest|bilinear|bicubic|lanczos")->required();
    up_cmd->add_option("--target", up.target, "Target size HxW, e.g. 256x256")->required();
    up_cmd->add_option("--lanczos-taps", up.lanczos_taps, "Lanczos window half-width")->capture_default_str();
    up_cmd->add_option("--bicubic-a", up.bicubic_a, "Keys kernel parameter")->capture_default_str();

    DiagnoseArgs diag;
    auto* diag_cmd = app.add_subcommand("diagnose", "Compute the six spectral diagnostics for an LR/HR pair");
    diag_cmd->add_option("--lr", diag.lr, "Low-resolution FMAP")->required();
    diag_cmd->add_option("--hr", diag.hr, "Upsampled FMAP")->required();
    diag_cmd->add_option("--out", diag.out, "Output JSON")->required();
    add_config_flags(diag_cmd, diag.config);

    CorrelateArgs corr;
    auto* corr_cmd = app.add_subcommand("correlate", "Correlate scene-level diagnostics with NVS metrics");
    corr_cmd->add_option("--diagnostics", corr.diagnostics, "Directory of SCENE__VIEW.json files, or one JSON file")
        ->required();
    corr_cmd->add_option("--metrics", corr.metrics, "Scene metrics CSV")->required();
    corr_cmd->add_option("--method", corr.method, "spearman|pearson")->capture_default_str();
    corr_cmd->add_flag("--align-goodness", corr.align_goodness, "Negate lower-is-better series before correlating");
    corr_cmd->add_option("--mode", corr.mode, "Metric rows to use: all|geometry|texture")->capture_default_str();
    corr_cmd->add_option("--out", corr.out, "Output prefix")->required();

    ReportArgs rep;
    auto* rep_cmd = app.add_subcommand("report", "Flatten a correlation report into plot-ready CSV");
    rep_cmd->add_option("--report", rep.report, "PREFIX.report.json")->required();
    rep_cmd->add_option("--out", rep.out, "Output CSV")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    try {
        if (synth_cmd->parsed()) {
            if (synth.suite.empty() == synth.kind.empty()) {
                throw UsageError("synth needs exactly one of --kind or --suite");
            }
            synth.suite.empty() ? run_synth_field(synth, args, out) : run_synth_suite(synth, args, out);
        } else if (up_cmd->parsed()) {
            run_upsample(up, args, out);
        } else if (diag_cmd->parsed()) {
            run_diagnose(diag, args, out);
        } else if (corr_cmd->parsed()) {
            run_correlate(corr, args, out, err);
        } else if (rep_cmd->parsed()) {
            run_report(rep, args, out);
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kData;
    } catch (const std::exception& e) {
        // FMAP format errors, I/O failures and other contract violations.
        err << "error: " << e.what() << "\n";
        return kData;
    }
    return kOk;
}

}  // namespace specprobe::cli
