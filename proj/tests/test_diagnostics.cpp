#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>

#include "specscan/diagnostics.hpp"

using namespace specscan;

namespace {

// Independent oracle: Phi(x) = int_{-inf}^x e^{-t^2} dt by Gauss-Kronrod.
double phi_oracle(double x) {
    boost::math::quadrature::gauss_kronrod<double, 61> gk;
    return gk.integrate([](double t) { return std::exp(-t * t); },
                        -std::numeric_limits<double>::infinity(), x, 10, 1e-15);
}

struct Standard {
    DiscreteSpectrum spec{std::vector<double>{0.3}};
    double sigma = 1e-3, h = 1e-3, omega = 1.0;
    SampledMeasurement m = synthesize(spec, omega, h, sigma, 7);
    WindowPlan plan = [this] {
        WindowParams wp;
        wp.lambda = 100.0;
        wp.gamma = 1e-3;
        return make_plan(wp, 0.0, h, m.K(), omega, sigma, spec.tv_norm());
    }();
};

}  // namespace

TEST_CASE("phi values") {
    CHECK(std::abs(phi(10.0) - std::sqrt(kPi)) < 1e-14);
    CHECK(phi(0.0) == doctest::Approx(0.8862269).epsilon(1e-7));
    CHECK(std::abs(phi(-1.0) - phi_oracle(-1.0)) < 1e-14);
    CHECK(phi(-1.0) == doctest::Approx(0.139403).epsilon(1e-5));
    CHECK(phi(-1.0) < std::exp(-1.0) / 2.0);
    for (double x : {-6.0, -3.0, -0.4, 0.7, 2.0, 4.5}) CHECK(std::abs(phi(x) - phi_oracle(x)) < 1e-14);
    // relative accuracy deep in the tail
    CHECK(phi(-15.0) == doctest::Approx(phi_oracle(-15.0)).epsilon(1e-10));
}

TEST_CASE("tail majorant is strict") {
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) CHECK(phi(-x) < gaussian_tail_majorant(x));
    CHECK(gaussian_tail_majorant(1.0) == doctest::Approx(0.183940).epsilon(1e-5));
}

TEST_CASE("gaussian convolution of a tone") {
    for (double xi : {0.0, 2.0, -3.5}) {
        for (double lam : {1.0, 10.0}) {
            const DiscreteSpectrum tone({xi});
            for (double w : {-1.0, 0.0, 0.25, 2.0}) {
                const cplx exact = std::exp(-xi * xi / (4 * lam)) * std::polar(1.0, xi * w);
                CHECK(std::abs(continuous_window_quadrature(tone, 0.0, lam, w) - exact) < 1e-10);
                CHECK(std::abs(continuous_window_exact(tone, 0.0, lam, w) - exact) < 1e-14);
            }
        }
    }
    CHECK(std::exp(-1.0) == doctest::Approx(0.367879).epsilon(1e-6));
}

TEST_CASE("discretisation bound in log space") {
    const double lb = log_discretization_bound(100.0, 0.1, 1e-3, 1.0);
    // 2 e^{1} / (e^{2 pi 100} - 1): log = log 2 + 1 - 200 pi ~ -626.6, i.e. about 1e-272
    CHECK(lb == doctest::Approx(std::log(2.0) + 1.0 - 200.0 * kPi).epsilon(1e-12));
    CHECK(lb < std::log(1e-270));
    // compare with the direct formula where it does not overflow
    const double direct = 2.0 * std::exp(1.0 * 0.25) * 3.0 / (std::exp(2 * kPi * 0.5 / 0.4) - 1.0);
    CHECK(std::exp(log_discretization_bound(1.0, 0.5, 0.4, 3.0)) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("gamma hypothesis") {
    CHECK(gamma_hypothesis_holds(1e-3, 1.0, 1e-3));
    CHECK(!gamma_hypothesis_holds(0.9, 1000.0, 1.0));
}

TEST_CASE("measured error terms on the standard instance") {
    Standard s;
    const auto eb = measure_errors(s.spec, s.plan, s.m, 0.1);
    for (double v : {eb.e1, eb.e2, eb.e3, eb.e4, eb.bound_rhs}) {
        CHECK(std::isfinite(v));
        CHECK(v >= 0.0);
    }
    CHECK(eb.e2 <= s.sigma);
    CHECK(eb.e3 < s.sigma);
    CHECK(eb.e4 < s.sigma);
    CHECK(eb.e1 < 1e-12);
    CHECK(eb.log_e1_bound < std::log(1e-270));
    CHECK(eb.bound_rhs == doctest::Approx(3.0 * s.sigma).epsilon(1e-12));
    CHECK(eb.total() <= eb.bound_rhs);
    CHECK(windowing_deviation(s.spec, s.plan, s.m) <= 5.0 * s.sigma);
}

TEST_CASE("measure_errors rejects a non-compliant gamma") {
    Standard s;
    WindowPlan bad = s.plan;
    bad.gamma = 0.9;
    const auto m = synthesize(s.spec, 1.0, 1e-3, 10.0, 1);
    CHECK_THROWS_AS(measure_errors(DiscreteSpectrum({0.0}, {cplx(100.0, 0.0)}), bad, m, 0.1), Error);
    CHECK_THROWS_AS(measure_errors(s.spec, s.plan, s.m, 0.0), Error);
}

TEST_CASE("model error is dominated by its bound") {
    Standard s;
    const double eps = 0.3;
    const double bound = model_error_bound(100.0, 1.0, eps, s.spec.tv_norm());
    for (int i = 0; i <= 20; ++i) {
        const double w = -(1.0 - eps) + i * 2.0 * (1.0 - eps) / 20.0;
        CHECK(model_error_quadrature(s.spec, 0.0, 100.0, 1.0, w) <= bound);
    }
}

TEST_CASE("window loss strictly decreasing") {
    double prev = window_loss(100.0, 1.0, 0.01);
    for (int i = 2; i <= 99; ++i) {
        const double cur = window_loss(100.0, 1.0, i / 100.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("sampling bound and resolution limit") {
    CHECK(sampling_bound(100, 0.5, 1.0) == 100);
    CHECK(sampling_bound(10, 0.1, 1.0) == 50);
    CHECK(sampling_bound(10, 0.01, 0.05) == 51);
    CHECK_THROWS_AS(sampling_bound(0, 0.5, 1.0), Error);
    for (long n : {1L, 3L, 10L}) CHECK(resolution_limit(2.0, 1.0, n) == doctest::Approx(kPi / 2.0));
    CHECK(resolution_limit(1.0, 100.0, 1) == doctest::Approx(0.0314159).epsilon(1e-5));
    CHECK(resolution_limit(1.0, 100.0, 1000000) == doctest::Approx(kPi).epsilon(1e-4));
    CHECK_THROWS_AS(resolution_limit(1.0, 0.0, 1), Error);
}
