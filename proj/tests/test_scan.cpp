#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "specscan/scan.hpp"

using namespace specscan;

namespace {

ScanConfig small_config(double r1, double r2) {
    ScanConfig c;
    c.r1 = r1;
    c.r2 = r2;
    c.subsample_factor = 1;
    return c;
}

}  // namespace

TEST_CASE("sub1 follows the index set of the subsampling routine") {
    CVec s;
    for (int i = 0; i < 10; ++i) s.emplace_back(i, 0);
    const auto [out, hs] = sub1(s, 0.01, 3);
    REQUIRE(out.size() == 3);
    CHECK(out[0].real() == 0.0);  // 1-based 1, 4, 7
    CHECK(out[1].real() == 3.0);
    CHECK(out[2].real() == 6.0);
    CHECK(hs == doctest::Approx(0.03));
    const auto [same, h1] = sub1(s, 0.01, 1);
    CHECK(same == s);
    CHECK(h1 == 0.01);
    CHECK_THROWS_AS(sub1(CVec(7, cplx(1, 0)), 0.01, 7), Error);
    CHECK_THROWS_AS(sub1(s, 0.01, 0), Error);
}

TEST_CASE("auto subsample factor") {
    const double r_ess = 52.57, rho = 0.1, h = 0.001;
    const double oracle = std::floor(std::min(1900.0 / (4.0 * r_ess * rho), kPi / (r_ess * h)));
    CHECK(oracle == 59.0);
    CHECK(auto_subsample_factor(1900, r_ess, rho, h) == 59);
    CHECK(auto_subsample_factor(1900, r_ess, 1e12, h) == 1);
    // Nyquist keeps the second term >= 1
    for (double R : {1.0, 10.0, 100.0}) {
        const double hmax = kPi / R;
        CHECK(kPi / (R * hmax) >= 1.0 - 1e-12);
        CHECK(auto_subsample_factor(100000, R, 1e-6, hmax) >= 1);
    }
    CHECK_THROWS_AS(auto_subsample_factor(10, 1.0, 0.0, 0.1), Error);
}

TEST_CASE("center grid tiles the sweep with half-open cells") {
    Rng rng(5);
    for (int t = 0; t < 200; ++t) {
        const double r1 = rng.uniform(-50, 50);
        const double r2 = r1 + rng.uniform(0.5, 80);
        const double rt = rng.uniform(0.3, 10);
        const auto [cells, degenerate] = center_grid(r1, r2, rt);
        REQUIRE(!cells.empty());
        CHECK(degenerate == (r2 - r1 < 2 * rt));
        CHECK(cells.front().lo == doctest::Approx(r1));
        CHECK(cells.back().hi == doctest::Approx(r2));
        for (std::size_t i = 0; i < cells.size(); ++i) {
            CHECK(cells[i].lo < cells[i].hi);
            if (!degenerate) {
                CHECK(cells[i].lo >= cells[i].mu - rt - 1e-9);
                CHECK(cells[i].hi <= cells[i].mu + rt + 1e-9);
            }
            if (i > 0) CHECK(cells[i].lo == cells[i - 1].hi);
        }
    }
    const auto [c, d] = center_grid(0.0, 18.12, 4.53);
    CHECK(!d);
    CHECK(c[0].mu == doctest::Approx(4.53));
    CHECK(c[1].mu == doctest::Approx(13.59));
    CHECK_THROWS_AS(center_grid(1.0, 1.0, 1.0), Error);
}

TEST_CASE("merge collapses only cross-window neighbours, order independent") {
    std::vector<std::pair<double, std::size_t>> t{{1.0, 0}, {1.1, 1}, {5.0, 1}, {5.05, 1}, {9.0, 2}};
    const auto m = merge_estimates(t, 0.2);
    REQUIRE(m.size() == 4);
    CHECK(m[0] == doctest::Approx(1.05));
    CHECK(m[1] == 5.0);
    CHECK(m[2] == 5.05);
    std::mt19937 g(1);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(t.begin(), t.end(), g);
        CHECK(merge_estimates(t, 0.2) == m);
    }
}

TEST_CASE("scan_music: single spectrum reported once") {
    const auto m = synthesize(DiscreteSpectrum({0.0}), 1.0, 0.01, 0.0, 1);
    const auto r = scan_music(m, small_config(-10, 10));
    REQUIRE(r.estimates.size() == 1);
    CHECK(std::abs(r.estimates[0]) < 1e-3);
    for (const char* stage : {"cgm", "subsample", "music", "merge", "total"}) CHECK(r.timings.count(stage) == 1);
}

TEST_CASE("scan_music: empty region yields nothing") {
    const auto m = synthesize(DiscreteSpectrum({-8.0, 0.0, 9.0}), 1.0, 0.01, 1e-3, 3);
    const auto r = scan_music(m, small_config(100, 200));
    CHECK(r.estimates.empty());
}

TEST_CASE("scan_music: degenerate sweep warns and uses one centre") {
    const auto m = synthesize(DiscreteSpectrum({0.5}), 1.0, 0.01, 0.0, 1);
    const auto r = scan_music(m, small_config(-1, 2));
    CHECK(r.warnings.size() == 1);
    REQUIRE(r.estimates.size() == 1);
    CHECK(std::abs(r.estimates[0] - 0.5) < 1e-3);
}

TEST_CASE("scan_music: auto factor needs a density prior") {
    const auto m = synthesize(DiscreteSpectrum({0.0}), 1.0, 0.01, 0.0, 1);
    ScanConfig c = small_config(-10, 10);
    c.subsample_factor.reset();
    CHECK_THROWS_AS(scan_music(m, c), Error);
    c.density_prior = 0.1;
    CHECK(scan_music(m, c).estimates.size() == 1);
}

TEST_CASE("scan_music: every in-sweep spectrum reported once (noiseless)") {
    const std::vector<double> y{-25.0, -17.5, -9.0, -4.4, 3.0, 4.53, 12.0, 21.0};
    const auto m = synthesize(DiscreteSpectrum(y), 1.0, 0.01, 0.0, 1);
    const auto r = scan_music(m, small_config(-30, 30));
    const auto s = match_and_score(DiscreteSpectrum(y), r.estimates, 1.0);
    CHECK(s.missed == 0);
    CHECK(s.spurious == 0);
    CHECK(s.max_matched_error() < 0.05);
}

TEST_CASE("property: equivariance under shifts by 2 R_tru") {
    const std::vector<double> y{-6.0, 1.0, 7.5};
    const double shift = 2.0 * region_radius(100.0, 0.95);
    std::vector<double> ys;
    for (double v : y) ys.push_back(v + shift);
    const auto a = scan_music(synthesize(DiscreteSpectrum(y), 1.0, 0.01, 0.0, 1), small_config(-10, 10));
    const auto b = scan_music(synthesize(DiscreteSpectrum(ys), 1.0, 0.01, 0.0, 1),
                              small_config(-10 + shift, 10 + shift));
    REQUIRE(a.estimates.size() == b.estimates.size());
    for (std::size_t i = 0; i < a.estimates.size(); ++i)
        CHECK(b.estimates[i] == doctest::Approx(a.estimates[i] + shift).epsilon(1e-9));
}

TEST_CASE("downsample_tau") {
    const auto m = synthesize(DiscreteSpectrum({0.0, 3.0}), 1.0, 0.01, 1e-3, 5);
    const auto id = downsample_tau(m, 1.0);
    CHECK(id.samples == m.samples);
    CHECK(id.omega == m.omega);
    const auto half = downsample_tau(m, 0.5);
    CHECK(half.samples.size() == 101);
    CHECK(half.step == m.step);
    CHECK(half.samples[50] == m.samples[100]);
    CHECK_THROWS_AS(downsample_tau(m, 0.001), Error);
    CHECK_THROWS_AS(downsample_tau(m, 0.0), Error);
}

TEST_CASE("super-sparse spectra recovered from tau-downsampled data") {
    const std::vector<double> y{-130.0, -65.0, 0.0, 65.0, 130.0};
    const DiscreteSpectrum truth(y);
    const double tau = 0.1;
    const auto m = synthesize(truth, 1.0, 1e-3, 1e-3, 77);
    const auto d = downsample_tau(m, tau);
    ScanConfig c;
    c.window.lambda = 3000.0;  // keeps enough windowed samples at the reduced cutoff
    c.r1 = -160.0;
    c.r2 = 160.0;
    c.subsample_factor = 1;
    const auto r = scan_music(d, c);
    const double rayleigh = kPi / (tau * 1.0);
    const auto s = match_and_score(truth, r.estimates, d.omega, rayleigh);
    CHECK(s.missed == 0);
    CHECK(s.max_matched_error() < rayleigh);
}
