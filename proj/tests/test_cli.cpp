#include <doctest.h>

#include <json.hpp>

#include "cli_helpers.hpp"
#include "oracles.hpp"
#include "specprobe/diagnostics_record.hpp"
#include "specprobe/fmap_io.hpp"
#include "specprobe/scene_metrics.hpp"

using namespace specprobe;
using clitest::run;
namespace fs = std::filesystem;

TEST_CASE("cli synth") {
    const auto dir = clitest::fresh_dir("synth");
    const auto out = (dir / "c.fmap").string();
    auto r = run({"synth", "--kind", "constant", "--value", "1", "--size", "8", "--channels", "2", "--seed", "1",
                  "--out", out});
    REQUIRE(r.code == 0);
    const auto m = read_fmap(out);
    CHECK(m.height() == 8);
    CHECK(m.width() == 8);
    CHECK(m.channels() == 2);
    for (float v : m.values()) CHECK(v == 1.0f);
    CHECK(fs::exists(out + ".manifest.json"));

    r = run({"synth", "--kind", "powerlaw", "--size", "8", "--seed", "1", "--out", out});
    CHECK(r.code == 2);
    CHECK(r.err.find("--beta") != std::string::npos);

    const std::vector<std::string> flags = {"synth", "--kind", "powerlaw", "--beta", "2", "--size", "32",
                                            "--channels", "3", "--seed", "9", "--out"};
    auto a = flags, b = flags;
    a.push_back((dir / "a.fmap").string());
    b.push_back((dir / "b.fmap").string());
    REQUIRE(run(a).code == 0);
    REQUIRE(run(b).code == 0);
    CHECK(clitest::slurp(dir / "a.fmap") == clitest::slurp(dir / "b.fmap"));

    CHECK(run({"synth", "--kind", "plaid", "--size", "8", "--seed", "1", "--out", out}).code == 2);
    CHECK(run({"synth", "--kind", "grating", "--size", "8", "--seed", "1", "--freq", "0.2", "--out", out}).code == 2);
    CHECK(run({"synth", "--size", "8", "--seed", "1", "--out", out}).code == 2);
    CHECK(run({"synth", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("cli upsample") {
    const auto dir = clitest::fresh_dir("upsample");
    const auto in = dir / "in.fmap";
    const auto src = oracle::random_map(16, 16, 3, 4);
    write_fmap(src, in);
    const auto out = (dir / "out.fmap").string();

    REQUIRE(run({"upsample", "--in", in.string(), "--out", out, "--method", "nsm", "--target", "256x256"}).code == 0);
    const auto padded = read_fmap(out);
    CHECK(padded.height() == 256);
    bool ok = true;
    for (std::size_t y = 0; y < 256; ++y)
        for (std::size_t x = 0; x < 256; ++x)
            for (std::size_t c = 0; c < 3; ++c)
                ok = ok && padded.at(y, x, c) == (y < 16 && x < 16 ? src.at(y, x, c) : 0.0f);
    CHECK(ok);
    CHECK(fs::exists(out + ".manifest.json"));

    for (const char* method : {"nsm", "nearest", "bilinear", "bicubic", "lanczos"}) {
        CAPTURE(method);
        REQUIRE(run({"upsample", "--in", in.string(), "--out", out, "--method", method, "--target", "16x16"}).code == 0);
        const auto same = read_fmap(out);
        double worst = 0.0;
        for (std::size_t i = 0; i < same.size(); ++i)
            worst = std::max(worst, std::abs(double(same.values()[i]) - src.values()[i]));
        CHECK(worst < 1e-6);
    }
    CHECK(run({"upsample", "--in", in.string(), "--out", out, "--method", "lanczos", "--target", "8x4"}).code == 0);
    CHECK(read_fmap(out).width() == 4);
    CHECK(run({"upsample", "--in", in.string(), "--out", out, "--method", "nsm", "--target", "8x8"}).code == 3);
    CHECK(run({"upsample", "--in", in.string(), "--out", out, "--method", "nsm", "--target", "8by8"}).code == 2);
    CHECK(run({"upsample", "--in", in.string(), "--out", out, "--method", "cubic", "--target", "32x32"}).code == 2);
    CHECK(run({"upsample", "--in", (dir / "missing.fmap").string(), "--out", out, "--method", "nsm", "--target",
               "32x32"})
              .code == 3);
}

TEST_CASE("cli diagnose") {
    const auto dir = clitest::fresh_dir("diagnose");
    const auto f = (dir / "f.fmap").string();
    write_fmap(oracle::random_map(16, 16, 4, 2), f);
    const auto out = (dir / "d.json").string();

    REQUIRE(run({"diagnose", "--lr", f, "--hr", f, "--out", out}).code == 0);
    const auto rec = read_diagnostics_json(out).at(0);
    CHECK(*rec.ssc.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(*rec.bwg.value) < 1e-9);
    CHECK(std::abs(*rec.hfss.value) < 1e-9);
    CHECK(*rec.csc.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*rec.adc.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(*rec.delta_mcs.value) < 1e-9);
    CHECK(rec.lr_id == "f");

    const auto manifest = nlohmann::json::parse(clitest::slurp(out + ".manifest.json"));
    CHECK(manifest["fingerprint"] == rec.config.fingerprint());
    CHECK(manifest["command"] == "diagnose");

    REQUIRE(run({"diagnose", "--lr", f, "--hr", f, "--out", out, "--radial-bins", "16"}).code == 0);
    CHECK(read_diagnostics_json(out).at(0).config.fingerprint() != rec.config.fingerprint());
    CHECK(read_diagnostics_json(out).at(0).config.radial_bins == 16);

    const auto tiny = (dir / "tiny.fmap").string();
    write_fmap(oracle::random_map(4, 4, 4, 3), tiny);
    REQUIRE(run({"diagnose", "--lr", tiny, "--hr", f, "--out", out}).code == 0);
    const auto text = clitest::slurp(out);
    CHECK(text.find("\"hfss\": null") != std::string::npos);
    CHECK(text.find("FitUnderdetermined") != std::string::npos);

    const auto other = (dir / "other.fmap").string();
    write_fmap(oracle::random_map(16, 16, 3, 2), other);
    CHECK(run({"diagnose", "--lr", f, "--hr", other, "--out", out}).code == 3);
    CHECK(run({"diagnose", "--lr", f, "--hr", f, "--out", out, "--hf-range", "0.5:0.25"}).code == 2);
    CHECK(run({"diagnose", "--lr", f, "--hr", f, "--out", out, "--hf-range", "abc"}).code == 2);
    CHECK(run({"diagnose", "--lr", f, "--hr", f, "--out", out, "--include-dc"}).code == 0);
    CHECK(read_diagnostics_json(out).at(0).config.dc_policy == DcPolicy::Include);
}

TEST_CASE("cli correlate and report") {
    const auto dir = clitest::fresh_dir("correlate");
    const auto suite = dir / "suite";
    REQUIRE(run({"synth", "--suite", "ssc-psnr", "--scenes", "10", "--seed", "5", "--out", suite.string()}).code == 0);
    REQUIRE(clitest::diagnose_suite(suite));
    const auto prefix = (dir / "run").string();
    auto r = run({"correlate", "--diagnostics", (suite / "diag").string(), "--metrics", (suite / "metrics.csv").string(),
                  "--method", "spearman", "--out", prefix});
    REQUIRE(r.code == 0);
    const auto corr = clitest::read_csv(prefix + ".corr.csv");
    CHECK(corr.size() == 7);
    CHECK(corr[0] == std::vector<std::string>{"diagnostic", "PSNR", "SSIM", "LPIPS"});
    CHECK(clitest::csv_cell(corr, "SSC", "PSNR") == "1");
    const auto gap = clitest::read_csv(prefix + ".gap.csv");
    CHECK(gap.size() == 7);
    CHECK(gap[0] == std::vector<std::string>{"diagnostic", "rho_g", "rho_t", "gap", "n_g", "n_t"});

    const std::string first = clitest::slurp(prefix + ".corr.csv");
    const std::string first_gap = clitest::slurp(prefix + ".gap.csv");
    REQUIRE(run({"correlate", "--diagnostics", (suite / "diag").string(), "--metrics",
                 (suite / "metrics.csv").string(), "--out", prefix})
                .code == 0);
    CHECK(clitest::slurp(prefix + ".corr.csv") == first);
    CHECK(clitest::slurp(prefix + ".gap.csv") == first_gap);

    const auto manifest = nlohmann::json::parse(clitest::slurp(prefix + ".manifest.json"));
    CHECK(manifest["fingerprint"] == DiagnosticsConfig{}.fingerprint());

    SUBCASE("report flattening") {
        const auto heat = (dir / "heat.csv").string();
        REQUIRE(run({"report", "--report", prefix + ".report.json", "--out", heat}).code == 0);
        const auto rows = clitest::read_csv(heat);
        CHECK(rows.size() == 19);
        CHECK(rows[0] == std::vector<std::string>{"diagnostic", "metric", "rho", "n", "aligned"});
        for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].at(4) == "false");

        REQUIRE(run({"correlate", "--diagnostics", (suite / "diag").string(), "--metrics",
                     (suite / "metrics.csv").string(), "--align-goodness", "--out", prefix})
                    .code == 0);
        REQUIRE(run({"report", "--report", prefix + ".report.json", "--out", heat}).code == 0);
        for (const auto& row : clitest::read_csv(heat)) {
            if (row[0] != "diagnostic") CHECK(row.at(4) == "true");
        }

        // an undefined cell keeps its n and leaves rho empty
        auto rep = nlohmann::ordered_json::parse(clitest::slurp(prefix + ".report.json"));
        rep["correlation"]["rho"][0][0] = nullptr;
        const auto edited = (dir / "edited.json").string();
        std::ofstream(edited) << rep.dump(2);
        REQUIRE(run({"report", "--report", edited, "--out", heat}).code == 0);
        const auto erows = clitest::read_csv(heat);
        CHECK(erows[1][2].empty());
        CHECK(erows[1][3] == "10");

        std::ofstream(edited) << "{\"goodness_aligned\": true}";
        CHECK(run({"report", "--report", edited, "--out", heat}).code == 2);
        std::ofstream(edited) << "not json";
        CHECK(run({"report", "--report", edited, "--out", heat}).code == 2);
    }

    SUBCASE("too few scenes") {
        const auto few = dir / "few";
        fs::create_directories(few);
        for (const char* name : {"scene000__v0.json", "scene001__v0.json"}) {
            fs::copy_file(suite / "diag" / name, few / name, fs::copy_options::overwrite_existing);
        }
        r = run({"correlate", "--diagnostics", few.string(), "--metrics", (suite / "metrics.csv").string(), "--out",
                 prefix});
        CHECK(r.code == 3);
        CHECK(r.err.find("excluded") == std::string::npos);
    }

    SUBCASE("join exclusions go to stderr") {
        auto metrics = load_scene_metrics(suite / "metrics.csv");
        std::erase_if(metrics, [](const SceneRecord& s) { return s.scene_id == "scene003"; });
        const auto csv = dir / "partial.csv";
        write_scene_metrics(metrics, csv);
        r = run({"correlate", "--diagnostics", (suite / "diag").string(), "--metrics", csv.string(), "--out", prefix});
        CHECK(r.code == 0);
        CHECK(r.err.find("scene003") != std::string::npos);
    }
}
