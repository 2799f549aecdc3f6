#include <doctest.h>

#include <cmath>
#include <numeric>

#include "specprobe/diagnostics.hpp"
#include "specprobe/error.hpp"
#include "specprobe/fft.hpp"
#include "specprobe/synth.hpp"

using namespace specprobe;

TEST_CASE("constant fill") {
    const auto m = generate({SynthKind::Constant, 8, 2, 0, 0, 0.25, -1.25, 0});
    CHECK(m.height() == 8);
    CHECK(m.channels() == 2);
    for (float v : m.values()) CHECK(v == -1.25f);
}

TEST_CASE("generation is deterministic and channel-stable") {
    for (auto kind : {SynthKind::PowerLaw, SynthKind::Grating, SynthKind::WhiteNoise}) {
        SynthSpec spec{kind, 32, 4, 1.5, 0.7, 0.2, 0, 99};
        CHECK(generate(spec) == generate(spec));
        const auto four = generate(spec);
        spec.channels = 2;
        const auto two = generate(spec);
        bool same = true;
        for (std::size_t y = 0; y < 32; ++y)
            for (std::size_t x = 0; x < 32; ++x)
                for (std::size_t c = 0; c < 2; ++c) same = same && two.at(y, x, c) == four.at(y, x, c);
        CHECK(same);
        spec.seed = 100;
        CHECK_FALSE(generate(spec) == two);
    }
}

TEST_CASE("power-law fields have zero mean and unit variance") {
    const auto m = generate({SynthKind::PowerLaw, 64, 3, 2.0, 0, 0.25, 0, 5});
    for (std::size_t c = 0; c < 3; ++c) {
        const auto plane = m.channel_plane(c);
        const double mean = std::accumulate(plane.begin(), plane.end(), 0.0) / plane.size();
        double var = 0.0;
        for (double v : plane) var += (v - mean) * (v - mean);
        CHECK(std::abs(mean) < 1e-6);
        CHECK(var / plane.size() == doctest::Approx(1.0).epsilon(1e-5));
    }
}

TEST_CASE("power-law spectrum is exactly Hermitian") {
    for (std::size_t n : {8u, 9u, 16u}) {
        auto grid = detail::powerlaw_spectrum(n, 2.0, 1234);
        REQUIRE(grid.size() == n * n);
        CHECK(grid[0] == cdouble(0.0, 0.0));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const std::size_t mi = (n - i) % n, mj = (n - j) % n;
                CHECK(grid[i * n + j] == std::conj(grid[mi * n + mj]));
            }
        }
        Fft2dPlan(n, n).inverse(grid);
        double worst = 0.0, scale = 0.0;
        for (const auto& v : grid) {
            worst = std::max(worst, std::abs(v.imag()));
            scale = std::max(scale, std::abs(v.real()));
        }
        CHECK(worst / scale < 1e-9);
    }
}

TEST_CASE("slope recovery for beta 2") {
    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto m = generate({SynthKind::PowerLaw, 128, 8, 2.0, 0, 0.25, 0, seed});
        mean += fit_slope(radial_spectrum(power_spectrum(m), {}), {0.25, 0.5}).beta;
    }
    mean /= 5.0;
    CHECK(mean >= 1.8);
    CHECK(mean <= 2.2);
}

TEST_CASE("recipe validation") {
    CHECK_THROWS_AS(generate({SynthKind::PowerLaw, 3, 1}), ValidationError);
    CHECK_THROWS_AS(generate({SynthKind::PowerLaw, 8, 1, -1.0}), ValidationError);
    CHECK_THROWS_AS(generate({SynthKind::Grating, 8, 1, 0, 0, 0.5}), ValidationError);
    CHECK_THROWS_AS(generate({SynthKind::Grating, 8, 1, 0, 4.0, 0.2}), ValidationError);
    CHECK(parse_synth_kind("whitenoise") == SynthKind::WhiteNoise);
    CHECK_FALSE(parse_synth_kind("pink").has_value());
}

TEST_CASE("scene suite with SSC driving PSNR") {
    const auto suite = make_scene_suite(10, SuiteRelation::SSC_drives_PSNR, 7);
    CHECK(suite.views.size() == 20);
    CHECK(suite.scene_diagnostics.size() == 10);
    CHECK(suite.metrics.size() == 30);
    CHECK_FALSE(suite.construction.empty());
    std::vector<double> ssc, psnr;
    for (const auto& r : suite.metrics) {
        if (r.probe_mode != ProbeMode::All) continue;
        ssc.push_back(*suite.scene_diagnostics.at(r.scene_id).ssc.value);
        psnr.push_back(r.psnr);
    }
    CHECK(spearman(ssc, psnr) == 1.0);
    // per-view records aggregate to the scene record
    const std::vector<DiagnosticsRecord> views = {suite.views[0].record, suite.views[1].record};
    CHECK(*aggregate_views(views).ssc.value == *suite.scene_diagnostics.at(suite.views[0].scene_id).ssc.value);
    CHECK_THROWS_AS(make_scene_suite(2, SuiteRelation::NoiseOnly, 1), ValidationError);
}

TEST_CASE("noise-only suites rarely show strong correlations") {
    // per cell: |rho| < 0.5 in at least 95% of (seed, cell) draws
    std::size_t below = 0, cells = 0;
    for (int s = 0; s < 20; ++s) {
        const auto suite = make_scene_suite(30, SuiteRelation::NoiseOnly, 500 + s);
        const auto rep = correlate_scenes(suite.scene_diagnostics, suite.metrics, CorrelationMethod::Spearman, false);
        for (const auto& c : rep.cells) {
            if (!c.defined()) continue;
            ++cells;
            below += std::abs(*c.rho) < 0.5;
        }
    }
    CHECK(cells >= 20 * 15);
    CHECK(static_cast<double>(below) / cells >= 0.95);
}
