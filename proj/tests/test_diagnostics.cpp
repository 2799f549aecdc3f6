#include <doctest.h>

#include <cmath>
#include <functional>
#include <numeric>

#include "oracles.hpp"
#include "specprobe/diagnostics.hpp"
#include "specprobe/error.hpp"
#include "specprobe/synth.hpp"
#include "specprobe/upsample.hpp"

using namespace specprobe;

namespace {

RadialSpectrum make_rs(std::vector<double> mean) {
    RadialSpectrum rs;
    rs.count.assign(mean.size(), 1);
    rs.bin_width = 0.5 / static_cast<double>(mean.size());
    rs.mean = std::move(mean);
    return rs;
}

RadialSpectrum radial_of(const FeatureMap& m, const DiagnosticsConfig& cfg = {}) {
    return radial_spectrum(power_spectrum(m), cfg);
}

FeatureMap powerlaw(std::size_t size, double beta, std::uint64_t seed, std::size_t channels = 8) {
    return generate({SynthKind::PowerLaw, size, channels, beta, 0, 0.25, 0, seed});
}

UndefinedReason reason_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const UndefinedMetric& e) {
        return e.reason();
    }
    FAIL("expected an undefined metric");
    return UndefinedReason::InsufficientSamples;
}

// Recomputes SSC from serialized radial means with the reference Pearson.
double ssc_oracle(const RadialSpectrum& a, const RadialSpectrum& b, double eps) {
    std::vector<double> x, y;
    for (std::size_t k = 0; k < a.bins(); ++k) {
        if (a.count[k] == 0 || b.count[k] == 0) continue;
        x.push_back(std::log(a.mean[k] + eps));
        y.push_back(std::log(b.mean[k] + eps));
    }
    return oracle::pearson(x, y);
}

double mcs_oracle(const RadialSpectrum& rs) {
    double mid = 0.0, all = 0.0;
    for (std::size_t k = 0; k < rs.bins(); ++k) {
        if (rs.count[k] == 0) continue;
        const double r = (k + 0.5) * rs.bin_width;
        all += rs.mean[k];
        if (r >= 0.125 && r < 0.375) mid += rs.mean[k];
    }
    return mid / all;
}

// Cropped cross-spectrum coherence straight from naive DFTs.
double csc_oracle(const FeatureMap& lr, const FeatureMap& hr) {
    const std::size_t h = lr.height(), w = lr.width(), H = hr.height(), W = hr.width();
    double sum = 0.0;
    std::size_t used = 0;
    for (std::size_t c = 0; c < lr.channels(); ++c) {
        const auto a = oracle::naive_dft2(lr, c);
        const auto b = oracle::naive_dft2(hr, c);
        oracle::cplx cross = 0.0;
        double ea = 0.0, eb = 0.0;
        for (std::size_t i = 0; i < h; ++i) {
            for (std::size_t j = 0; j < w; ++j) {
                const long long fy = static_cast<long long>(i) - static_cast<long long>(h / 2);
                const long long fx = static_cast<long long>(j) - static_cast<long long>(w / 2);
                if (fy == 0 && fx == 0) continue;
                const auto& va = a[i * w + j];
                const auto& vb = b[(fy + H / 2) * W + (fx + W / 2)];
                cross += va * std::conj(vb);
                ea += std::norm(va);
                eb += std::norm(vb);
            }
        }
        if (ea > 0 && eb > 0) {
            sum += std::abs(cross) / std::sqrt(ea * eb);
            ++used;
        }
    }
    return sum / used;
}

}  // namespace

TEST_CASE("ssc") {
    const auto lr = radial_of(powerlaw(64, 2.0, 1));
    CHECK(ssc(lr, lr) == 1.0);
    auto scaled = lr;
    for (auto& v : scaled.mean) v *= 3.0;
    CHECK(ssc(lr, scaled) == doctest::Approx(1.0).epsilon(1e-12));

    const auto hr = radial_of(powerlaw(64, 1.0, 2));
    const double s = ssc(lr, hr);
    CHECK(s < 1.0);
    CHECK(s == doctest::Approx(ssc_oracle(lr, hr, 1e-12)).epsilon(1e-9));

    const auto tiny = make_rs({1.0, 2.0, 0.0, 0.0});
    auto sparse = tiny;
    sparse.count = {1, 1, 0, 0};
    CHECK(reason_of([&] { ssc(sparse, sparse); }) == UndefinedReason::UndefinedCorrelation);
}

TEST_CASE("band energies") {
    DiagnosticsConfig cfg;
    const auto flat = band_energies(make_rs(std::vector<double>(32, 1.0)), cfg);
    CHECK(flat.energy == std::vector<double>{8, 8, 8, 8});

    std::vector<double> first(32, 0.0);
    first[0] = 2.5;
    CHECK(band_energies(make_rs(first), cfg).energy == std::vector<double>{2.5, 0, 0, 0});

    const auto decay = band_energies(radial_of(powerlaw(64, 2.0, 3)), cfg);
    for (std::size_t k = 1; k < 4; ++k) CHECK(decay.energy[k] < decay.energy[k - 1]);

    RadialSpectrum empty = make_rs(std::vector<double>(32, 0.0));
    empty.count.assign(32, 0);
    CHECK(reason_of([&] { band_energies(empty, cfg); }) == UndefinedReason::UndefinedDistribution);
}

TEST_CASE("bwg") {
    const BandEnergies a{{1, 2, 3, 4}};
    CHECK(bwg(a, a) == 0.0);
    CHECK(bwg({{5, 0, 0, 0}}, {{0, 0, 0, 7}}) == 2.0);
    CHECK(bwg(a, {{5, 10, 15, 20}}) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(bwg(a, {{5, 10, 15, 20}})) < 1e-12);
    CHECK(reason_of([&] { bwg(a, {{0, 0, 0, 0}}); }) == UndefinedReason::UndefinedDistribution);
}

TEST_CASE("fit_slope") {
    std::vector<double> m(32);
    for (std::size_t k = 0; k < 32; ++k) {
        const double r = (k + 0.5) / 64.0;
        m[k] = 1.0 / (r * r);
    }
    CHECK(fit_slope(make_rs(m), {0.25, 0.5}).beta == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit_slope(make_rs(m), {0.25, 0.5}).n_points == 16);
    CHECK(std::abs(fit_slope(make_rs(std::vector<double>(32, 4.0)), {0.25, 0.5}).beta) < 1e-9);

    double mean = 0.0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) mean += fit_slope(radial_of(powerlaw(128, 3.0, seed)), {0.25, 0.5}).beta;
    mean /= 5.0;
    CHECK(mean >= 2.8);
    CHECK(mean <= 3.2);

    CHECK(reason_of([&] { fit_slope(make_rs(m), {0.25, 0.28}); }) == UndefinedReason::FitUnderdetermined);
}

TEST_CASE("hfss") {
    DiagnosticsConfig cfg;
    const auto a = radial_of(powerlaw(128, 1.0, 7));
    CHECK(hfss(a, a, cfg) == 0.0);
    const double v = hfss(a, radial_of(powerlaw(128, 2.0, 8)), cfg);
    CHECK(v >= 0.8);
    CHECK(v <= 1.2);

    // 4x4 has only two populated bins inside [0.25, 0.5)
    const auto tiny = radial_of(oracle::random_map(4, 4, 2, 1));
    try {
        hfss(tiny, a, cfg);
        FAIL("accepted");
    } catch (const UndefinedMetric& e) {
        CHECK(e.reason() == UndefinedReason::FitUnderdetermined);
        CHECK(std::string(e.what()).find("LR") != std::string::npos);
    }
    const auto rec = diagnose_pair(oracle::random_map(4, 4, 2, 1), oracle::random_map(16, 16, 2, 2));
    CHECK_FALSE(rec.hfss.defined());
    CHECK(rec.hfss.reason.find("FitUnderdetermined") != std::string::npos);
}

TEST_CASE("csc") {
    DiagnosticsConfig cfg;
    const auto m = oracle::random_map(8, 8, 4, 1);
    CHECK(csc(m, m, cfg) == doctest::Approx(1.0).epsilon(1e-9));
    FeatureMap scaled = m;
    for (auto& v : scaled.values()) v *= 2.5f;
    CHECK(csc(m, scaled, cfg) == doctest::Approx(1.0).epsilon(1e-9));

    SUBCASE("matches the naive cropped coherence") {
        const auto lr = oracle::random_map(5, 6, 3, 4);
        const auto hr = upsample(lr, {UpsampleKind::Bicubic}, 12, 9);
        CHECK(csc(lr, hr, cfg) == doctest::Approx(csc_oracle(lr, hr)).epsilon(1e-9));
        const auto hr2 = oracle::random_map(16, 16, 3, 5);
        CHECK(csc(lr, hr2, cfg) == doctest::Approx(csc_oracle(lr, hr2)).epsilon(1e-9));
    }
    SUBCASE("independent maps are incoherent") {
        int below = 0;
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            const auto lr = oracle::random_map(8, 8, 16, 1000 + seed);
            const auto hr = oracle::random_map(16, 16, 16, 5000 + seed);
            below += csc(lr, hr, cfg) < 0.5;
        }
        CHECK(below >= 99);
    }
    SUBCASE("errors") {
        CHECK(reason_of([&] { csc(FeatureMap(8, 8, 4), m, cfg); }) ==
              UndefinedReason::UndefinedCoherence);
        CHECK_THROWS_AS(csc(m, oracle::random_map(8, 8, 3, 2), cfg), DimensionError);
        CHECK_THROWS_AS(csc(oracle::random_map(16, 16, 4, 2), m, cfg), DimensionError);
    }
}

TEST_CASE("adc") {
    DiagnosticsConfig cfg;
    const auto a = angular_spectrum(power_spectrum(oracle::random_map(16, 16, 2, 1)), cfg);
    CHECK(adc(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    AngularSpectrum flat;
    flat.energy.assign(16, 1.0);
    CHECK(reason_of([&] { adc(a, flat); }) == UndefinedReason::UndefinedCorrelation);
}

TEST_CASE("mcs and delta") {
    DiagnosticsConfig cfg;
    std::vector<double> inside(32, 0.0), outside(32, 0.0);
    for (std::size_t k = 0; k < 32; ++k) ((k >= 8 && k < 24) ? inside : outside)[k] = 1.0 + k;
    CHECK(mcs(make_rs(inside), cfg) == 1.0);
    CHECK(mcs(make_rs(outside), cfg) == 0.0);
    CHECK(delta_mcs(make_rs(outside), make_rs(inside), cfg) == 1.0);
    CHECK(std::abs(mcs(make_rs(std::vector<double>(32, 1.0)), cfg) - 0.5) <= 1.0 / 64.0);
    CHECK(reason_of([&] { mcs(make_rs(std::vector<double>(32, 0.0)), cfg); }) == UndefinedReason::UndefinedRatio);

    const auto lr_map = powerlaw(32, 2.0, 9);
    const auto lr = radial_of(lr_map);
    const auto hr = radial_of(upsample(lr_map, {UpsampleKind::Nearest}, 128, 128));
    CHECK(delta_mcs(lr, lr, cfg) == 0.0);
    CHECK(std::abs(delta_mcs(lr, hr, cfg) - std::abs(mcs_oracle(hr) - mcs_oracle(lr))) < 1e-12);
}

TEST_CASE("diagnose_pair") {
    const auto m = oracle::random_map(24, 20, 5, 3);
    const auto r = diagnose_pair(m, m);
    CHECK(*r.ssc.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(*r.bwg.value) < 1e-9);
    CHECK(std::abs(*r.hfss.value) < 1e-9);
    CHECK(*r.csc.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(*r.adc.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::abs(*r.delta_mcs.value) < 1e-9);
    CHECK_NOTHROW(r.validate());

    CHECK_THROWS_AS(diagnose_pair(m, oracle::random_map(24, 20, 4, 1)), DimensionError);

    // LR larger than HR: CSC cannot crop, the rest still runs
    const auto big = diagnose_pair(oracle::random_map(32, 32, 2, 1), oracle::random_map(16, 16, 2, 2));
    CHECK_FALSE(big.csc.defined());
    CHECK(big.csc.reason.find("DimensionError") != std::string::npos);
    CHECK(big.ssc.defined());

    // the pipeline value equals the standalone pieces
    const auto lr = powerlaw(16, 2.0, 4, 6);
    const auto hr = upsample(lr, {UpsampleKind::Bilinear}, 64, 64);
    const auto rec = diagnose_pair(lr, hr);
    DiagnosticsConfig cfg;
    const auto rl = radial_of(lr), rh = radial_of(hr);
    CHECK(*rec.ssc.value == ssc(rl, rh));
    CHECK(*rec.bwg.value == bwg(band_energies(rl, cfg), band_energies(rh, cfg)));
    CHECK(*rec.csc.value == doctest::Approx(csc_oracle(lr, hr)).epsilon(1e-9));
    CHECK(*rec.mcs_lr.value == mcs(rl, cfg));
    CHECK(rec.config.fingerprint() == cfg.fingerprint());
}
