#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>

#include "specprobe/diagnostics.hpp"
#include "specprobe/error.hpp"
#include "specprobe/fmap_io.hpp"
#include "specprobe/stats.hpp"
#include "specprobe/synth.hpp"
#include "specprobe/upsample.hpp"

namespace py = pybind11;
using namespace specprobe;

namespace {

using FloatArray = py::array_t<float, py::array::c_style | py::array::forcecast>;

FeatureMap to_map(const FloatArray& array) {
    if (array.ndim() != 3) {
        throw py::value_error("expected a (height, width, channels) array, got ndim=" + std::to_string(array.ndim()));
    }
    const auto h = static_cast<std::size_t>(array.shape(0));
    const auto w = static_cast<std::size_t>(array.shape(1));
    const auto c = static_cast<std::size_t>(array.shape(2));
    std::vector<float> data(array.data(), array.data() + array.size());
    return FeatureMap(h, w, c, std::move(data));
}

py::array_t<float> to_array(const FeatureMap& map) {
    py::array_t<float> out({map.height(), map.width(), map.channels()});
    std::memcpy(out.mutable_data(), map.values().data(), map.size() * sizeof(float));
    return out;
}

UpsampleKind upsample_kind(const std::string& name) {
    const auto kind = parse_upsample_kind(name);
    if (!kind) throw py::value_error("unknown method '" + name + "'");
    return *kind;
}

py::object metric_value(const Metric& m) {
    return m.defined() ? py::object(py::float_(*m.value)) : py::object(py::none());
}

py::dict record_dict(const DiagnosticsRecord& r) {
    py::dict d;
    py::dict reasons;
    const std::pair<const char*, const Metric*> fields[] = {
        {"ssc", &r.ssc}, {"bwg", &r.bwg},       {"hfss", &r.hfss},       {"csc", &r.csc},
        {"adc", &r.adc}, {"mcs_lr", &r.mcs_lr}, {"mcs_hr", &r.mcs_hr}, {"delta_mcs", &r.delta_mcs}};
    for (const auto& [name, m] : fields) {
        d[name] = metric_value(*m);
        if (!m->defined()) reasons[name] = m->reason;
    }
    d["lr_id"] = r.lr_id;
    d["hr_id"] = r.hr_id;
    d["fingerprint"] = r.config.fingerprint();
    d["reasons"] = reasons;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Spectral diagnostics for feature-map upsampling";
#ifdef SPECPROBE_VERSION
    m.attr("__version__") = SPECPROBE_VERSION;
#endif

    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<UndefinedMetric>(m, "UndefinedMetric", PyExc_ArithmeticError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def(
        "read_fmap", [](const std::string& path) { return to_array(read_fmap(path)); }, py::arg("path"),
        "Read an FMAP file into a float32 array of shape (height, width, channels).");
    m.def(
        "write_fmap", [](const FloatArray& array, const std::string& path) { write_fmap(to_map(array), path); },
        py::arg("array"), py::arg("path"));

    m.def(
        "upsample",
        [](const FloatArray& array, const std::string& method, std::size_t height, std::size_t width, int lanczos_taps,
           double bicubic_a) {
            const UpsampleMethod um{upsample_kind(method), lanczos_taps, bicubic_a};
            um.validate();
            return to_array(upsample(to_map(array), um, height, width));
        },
        py::arg("array"), py::arg("method"), py::arg("height"), py::arg("width"), py::arg("lanczos_taps") = 3,
        py::arg("bicubic_a") = -0.5);

    m.def(
        "generate",
        [](const std::string& kind, std::size_t size, std::size_t channels, double beta, double angle, double freq,
           double value, std::uint64_t seed) {
            const auto k = parse_synth_kind(kind);
            if (!k) throw py::value_error("unknown kind '" + kind + "'");
            return to_array(generate({*k, size, channels, beta, angle, freq, value, seed}));
        },
        py::arg("kind"), py::arg("size"), py::arg("channels") = 1, py::arg("beta") = 2.0, py::arg("angle") = 0.0,
        py::arg("freq") = 0.25, py::arg("value") = 0.0, py::arg("seed") = 0, "angle is in radians.");

    m.def(
        "diagnose_pair",
        [](const FloatArray& lr, const FloatArray& hr, std::size_t radial_bins, std::size_t bands,
           std::pair<double, double> hf_range, std::pair<double, double> mid_range, std::size_t angular_bins,
           double epsilon, bool include_dc) {
            DiagnosticsConfig cfg;
            cfg.radial_bins = radial_bins;
            cfg.bwg_bands = bands;
            cfg.hf_fit_range = {hf_range.first, hf_range.second};
            cfg.mid_band = {mid_range.first, mid_range.second};
            cfg.angular_bins = angular_bins;
            cfg.log_epsilon = epsilon;
            cfg.dc_policy = include_dc ? DcPolicy::Include : DcPolicy::Exclude;
            const FeatureMap a = to_map(lr);
            const FeatureMap b = to_map(hr);
            DiagnosticsRecord rec;
            {
                py::gil_scoped_release release;
                rec = diagnose_pair(a, b, cfg);
            }
            return record_dict(rec);
        },
        py::arg("lr"), py::arg("hr"), py::arg("radial_bins") = 32, py::arg("bands") = 4,
        py::arg("hf_range") = std::pair{0.25, 0.5}, py::arg("mid_range") = std::pair{0.125, 0.375},
        py::arg("angular_bins") = 16, py::arg("epsilon") = 1e-12, py::arg("include_dc") = false,
        "Six spectral diagnostics for an LR/HR pair; undefined metrics are None with a reason.");

    m.def(
        "pearson", [](std::vector<double> x, std::vector<double> y) { return pearson(x, y); }, py::arg("x"),
        py::arg("y"));
    m.def(
        "spearman", [](std::vector<double> x, std::vector<double> y) { return spearman(x, y); }, py::arg("x"),
        py::arg("y"));
}
