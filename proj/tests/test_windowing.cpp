#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <cstring>

#include "specscan/diagnostics.hpp"
#include "specscan/kernels.hpp"
#include "specscan/windowing.hpp"

using namespace specscan;

namespace {

WindowPlan plan_for(double lambda, double mu, double gamma, const SampledMeasurement& m) {
    WindowParams p;
    p.lambda = lambda;
    p.gamma = gamma;
    return make_plan(p, mu, m.step, m.K(), m.omega, 0.0, 0.0);
}

// Direct term-by-term sum of the windowed output, long double.
std::complex<long double> direct_output(const SampledMeasurement& m, const WindowPlan& plan,
                                        std::size_t l) {
    const int K = m.K(), G = plan.Gamma;
    const long double h = m.step, lam = plan.lambda;
    std::complex<long double> s = 0;
    for (int j = -G; j <= G; ++j) {
        const int k = -K + G + static_cast<int>(l) - j;  // frequency index
        const std::complex<long double> y(m.samples[k + K].real(), m.samples[k + K].imag());
        const auto cen = y * std::polar(1.0L, -static_cast<long double>(plan.mu) * k * h);
        const long double w = h * std::sqrt(lam / 3.14159265358979323846L) * std::exp(-lam * (j * h) * (j * h));
        s += cen * w;
    }
    return s;
}

}  // namespace

TEST_CASE("gaussian_window values") {
    CHECK(gaussian_window(kPi, 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    // long-double oracle
    const long double v = std::exp(-1.0L) / std::sqrt(3.14159265358979323846L);
    CHECK(std::abs(gaussian_window(1.0, 1.0) - static_cast<double>(v)) < 1e-15);
    CHECK(gaussian_window(1.0, 1.0) == doctest::Approx(0.207554).epsilon(1e-6));
    CHECK(gaussian_window(100.0, 0.0) == doctest::Approx(5.641896).epsilon(1e-6));
    CHECK_THROWS_AS(gaussian_window(0.0, 1.0), Error);
}

TEST_CASE("gaussian_window has unit mass") {
    boost::math::quadrature::gauss_kronrod<double, 61> gk;
    for (double lam : {0.5, 3.0, 100.0}) {
        const double I = gk.integrate([&](double w) { return gaussian_window(lam, w); },
                                      -std::numeric_limits<double>::infinity(),
                                      std::numeric_limits<double>::infinity(), 15, 1e-13);
        CHECK(I == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("truncation index is the exact minimiser") {
    for (double lam : {1.0, 100.0, 1000.0}) {
        for (double gamma : {1e-1, 1e-3, 1e-12}) {
            const double h = 1e-3;
            const int G = truncation_index(lam, h, gamma, 1000000);
            CHECK(std::exp(-lam * (G * h) * (G * h)) <= gamma);
            if (G > 1) CHECK(std::exp(-lam * ((G - 1) * h) * ((G - 1) * h)) > gamma);
        }
    }
    CHECK_THROWS_AS(truncation_index(1.0, 1e-3, 1e-3, 10), Error);
}

TEST_CASE("regions: analytic inverse and grid-scan cross-check") {
    const auto r = regions(100.0, 0.95, 1e-3);
    CHECK(r.r_tru == doctest::Approx(4.5296).epsilon(1e-4));
    CHECK(r.r_ess == doctest::Approx(52.565).epsilon(1e-4));
    CHECK(r.r_tru < r.r_ess);
    CHECK(region_radius(37.0, 1.0) == 0.0);
    // grid scan with step 1e-4: last grid point with exp(-x^2/(4 lambda)) >= kappa
    for (double kappa : {0.95, 1e-3}) {
        double last = 0.0;
        for (long i = 0;; ++i) {
            const double x = i * 1e-4;
            if (std::exp(-x * x / 400.0) < kappa) break;
            last = x;
        }
        const double R = region_radius(100.0, kappa);
        CHECK(std::abs(R - last) <= 1e-4);
        CHECK(std::exp(-R * R / 400.0) == doctest::Approx(kappa).epsilon(1e-12));
    }
    CHECK_THROWS_AS(regions(100.0, 1e-3, 0.95), Error);
    CHECK_THROWS_AS(regions(100.0, 0.95, 0.0), Error);
    CHECK_THROWS_AS(regions(100.0, 1.2, 0.5), Error);
}

TEST_CASE("cgm: centred spectrum gives a constant equal to the window mass") {
    const auto m = synthesize(DiscreteSpectrum({0.7}), 1.0, 0.01, 0.0, 1);
    const auto plan = plan_for(20.0, 0.7, 1e-3, m);
    const auto w = cgm(m, plan);
    const auto g = window_weights(20.0, 0.01, plan.Gamma);
    double c = 0.0;
    for (double x : g) c += x;
    CHECK(w.mass == doctest::Approx(c));
    for (const auto& v : w.samples) CHECK(std::abs(v - cplx(c, 0.0)) < 1e-12);
}

TEST_CASE("cgm: matches the direct-sum oracle (y=mu=5)") {
    const auto m = synthesize(DiscreteSpectrum({5.0}), 1.0, 0.001, 0.0, 1);
    const auto plan = plan_for(100.0, 5.0, 1e-3, m);
    const auto w = cgm(m, plan);
    double worst = 0.0, worst_oracle = 0.0;
    for (std::size_t l = 0; l < w.samples.size(); ++l) {
        worst = std::max(worst, std::abs(w.samples[l] - cplx(w.mass, 0.0)));
        const auto d = direct_output(m, plan, l);
        worst_oracle = std::max(worst_oracle,
                                std::abs(w.samples[l] - cplx(double(d.real()), double(d.imag()))));
    }
    CHECK(worst < 1e-12);
    CHECK(worst_oracle < 1e-12);
}

TEST_CASE("cgm: far component is damped by exp(-(y-mu)^2/(4 lambda))") {
    const double h = 1e-3;
    const auto m0 = synthesize(DiscreteSpectrum({0.0}), 1.0, h, 0.0, 1);
    const auto m60 = synthesize(DiscreteSpectrum({60.0}), 1.0, h, 0.0, 1);
    const auto both = synthesize(DiscreteSpectrum({0.0, 60.0}), 1.0, h, 0.0, 1);
    const auto plan = plan_for(100.0, 0.0, 1e-12, both);
    const auto w0 = cgm(m0, plan), w60 = cgm(m60, plan), wb = cgm(both, plan);
    const double expected = std::exp(-9.0);
    CHECK(expected == doctest::Approx(1.23e-4).epsilon(1e-2));
    for (std::size_t l = 0; l < wb.samples.size(); l += 37) {
        CHECK(std::abs(wb.samples[l] - w0.samples[l] - w60.samples[l]) < 1e-13);
        const double ratio = std::abs(w60.samples[l]) / std::abs(w0.samples[l]);
        CHECK(ratio == doctest::Approx(expected).epsilon(1e-6));
    }
}

TEST_CASE("cgm: pure tone reproduces the continuous convolution (interior)") {
    const double xi = 2.0, lam = 1.0, h = 0.01;
    const auto m = synthesize(DiscreteSpectrum({xi}), 10.0, h, 0.0, 1);
    const auto plan = plan_for(lam, 0.0, 1e-14, m);
    const auto w = cgm(m, plan);
    for (std::size_t l = 0; l < w.samples.size(); l += 101) {
        const double om = w.frequency(l);
        const cplx expect = std::exp(-xi * xi / (4.0 * lam)) * std::polar(1.0, xi * om);
        CHECK(std::abs(w.samples[l] - expect) < 1e-12);
    }
}

TEST_CASE("cgm: output length, unitarity, rejection") {
    const auto m = synthesize(DiscreteSpectrum({-1.0, 2.0}), 1.0, 0.01, 1e-3, 3);
    for (double lam : {20.0, 50.0, 100.0}) {
        const auto plan = plan_for(lam, 0.5, 1e-3, m);
        CHECK(cgm(m, plan).samples.size() == m.samples.size() - 2 * plan.Gamma);
    }
    const auto cen = centralize(m, 1.234);
    for (std::size_t k = 0; k < cen.size(); ++k)
        CHECK(std::abs(cen[k]) == doctest::Approx(std::abs(m.samples[k])).epsilon(1e-15));
    auto bad = plan_for(100.0, 0.0, 1e-3, m);
    bad.Gamma = m.K() + 1;
    CHECK_THROWS_AS(cgm(m, bad), Error);
}

TEST_CASE("cgm: serial and parallel kernels agree bitwise; FFT agrees to 1e-10") {
    const auto m = synthesize(DiscreteSpectrum({-3.0, 0.2, 4.0}), 1.0, 1e-3, 1e-3, 11);
    const auto plan = plan_for(100.0, 0.0, 1e-3, m);
    CgmOptions ser, par, fft;
    ser.path = par.path = ConvolutionPath::direct;
    ser.exec = Exec::serial;
    par.exec = Exec::parallel;
    fft.path = ConvolutionPath::fft;
    const auto a = cgm(m, plan, ser), b = cgm(m, plan, par), c = cgm(m, plan, fft);
    REQUIRE(a.samples.size() == b.samples.size());
    CHECK(std::memcmp(a.samples.data(), b.samples.data(), a.samples.size() * sizeof(cplx)) == 0);
    double worst = 0.0;
    for (std::size_t l = 0; l < a.samples.size(); ++l) worst = std::max(worst, std::abs(a.samples[l] - c.samples[l]));
    CHECK(worst < 1e-10);
}

TEST_CASE("effective cutoff") {
    const auto c = effective_cutoff(170.0, 1.0, 10.0, 1e-2);
    CHECK(c.flag == CutoffFlag::ok);
    CHECK(c.omega_win == doctest::Approx(0.83).epsilon(0.01));
    CHECK(c.omega_win > 0.0);
    CHECK(c.omega_win < 1.0);
    // bisection solution: H just below the threshold at eps*, above slightly before it
    const double thr = std::sqrt(kPi) * 1e-2 / 10.0;
    CHECK(window_loss(170.0, 1.0, c.epsilon) < thr);
    CHECK(window_loss(170.0, 1.0, c.epsilon - 1e-9) >= thr);
    // the bound at Omega_win is below sigma
    CHECK(model_error_bound(170.0, 1.0, c.epsilon, 10.0) < 1e-2);

    // sigma approaching the no-loss threshold from below drives eps* to 0
    const double h0 = window_loss(170.0, 1.0, 0.0);
    const double s_lim = 10.0 * h0 / std::sqrt(kPi);
    const auto near = effective_cutoff(170.0, 1.0, 10.0, s_lim * (1.0 - 1e-9));
    CHECK(near.epsilon < 1e-3);
    CHECK(near.omega_win > 0.999);
    CHECK(effective_cutoff(170.0, 1.0, 10.0, s_lim * 1.01).flag == CutoffFlag::no_loss);
    CHECK(effective_cutoff(0.01, 1.0, 1.0, 1e-12).flag == CutoffFlag::useless);
}

TEST_CASE("model error bound") {
    const double b = model_error_bound(100.0, 1.0, 0.5, 1.0);
    CHECK(b == doctest::Approx(7.7e-13).epsilon(0.02));
    // independent: (1/sqrt(pi)) (Phi(-5) + Phi(-15)) with Phi(-x) = sqrt(pi)/2 erfc(x)
    const double oracle = 0.5 * (std::erfc(5.0) + std::erfc(15.0));
    CHECK(b == doctest::Approx(oracle).epsilon(1e-12));
    CHECK(model_error_bound(100.0, 1.0, 0.5, 0.0) == 0.0);
    double prev = model_error_bound(100.0, 1.0, 0.01, 1.0);
    for (int i = 2; i < 100; ++i) {
        const double cur = model_error_bound(100.0, 1.0, i * 0.01, 1.0);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK_THROWS_AS(model_error_bound(100.0, 1.0, 1.0, 1.0), Error);
}
