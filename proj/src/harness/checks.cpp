#include "specscan/harness/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "specscan/annihilator.hpp"
#include "specscan/diagnostics.hpp"
#include "specscan/windowing.hpp"

namespace specscan::harness {

std::vector<CheckRow> run_checks() {
    std::vector<CheckRow> rows;
    auto le = [&](std::string name, double value, double limit) {
        rows.push_back({std::move(name), value <= limit, value, limit});
    };

    le("phi(10) - sqrt(pi)", std::abs(phi(10.0) - std::sqrt(kPi)), 1e-14);
    le("phi(0) - sqrt(pi)/2", std::abs(phi(0.0) - 0.5 * std::sqrt(kPi)), 1e-15);
    for (double x : {0.1, 0.5, 1.0, 2.0, 5.0}) {
        char name[64];
        std::snprintf(name, sizeof name, "tail majorant strict at x=%g", x);
        rows.push_back({name, phi(-x) < gaussian_tail_majorant(x), phi(-x), gaussian_tail_majorant(x)});
    }
    {
        const DiscreteSpectrum tone({2.0});
        double worst = 0.0;
        for (double w : {-0.5, 0.0, 0.3, 1.0})
            worst = std::max(worst, std::abs(continuous_window_quadrature(tone, 0.0, 1.0, w) -
                                             continuous_window_exact(tone, 0.0, 1.0, w)));
        le("gaussian convolution of a tone (quadrature)", worst, 1e-10);
    }

    // Standard instance: one unit spectrum, lambda = 100, h = 1e-3, sigma = 1e-3.
    const DiscreteSpectrum spec({0.3});
    const double sigma = 1e-3, h = 1e-3, omega = 1.0;
    const auto m = synthesize(spec, omega, h, sigma, 7);
    WindowParams wp;
    wp.lambda = 100.0;
    wp.gamma = 1e-3;
    const auto plan = make_plan(wp, 0.0, h, m.K(), omega, sigma, spec.tv_norm());
    const auto eb = measure_errors(spec, plan, m, 0.1);
    le("E2 <= sigma", eb.e2, sigma);
    le("E3 <= sigma", eb.e3, sigma);
    le("E4 <= sigma", eb.e4, sigma);
    le("E_total <= bound", eb.total(), eb.bound_rhs);
    le("log E1 bound < log 1e-270", eb.log_e1_bound, std::log(1e-270));
    le("windowing deviation <= 5 sigma", windowing_deviation(spec, plan, m), 5.0 * sigma);

    {
        double worst = -1.0;
        const double eps = 0.3;
        const double bound = model_error_bound(wp.lambda, omega, eps, spec.tv_norm());
        for (int i = 0; i <= 20; ++i) {
            const double w = -(1.0 - eps) * omega + i * 2.0 * (1.0 - eps) * omega / 20.0;
            worst = std::max(worst, model_error_quadrature(spec, 0.0, wp.lambda, omega, w) - bound);
        }
        le("model error below its bound (max excess)", worst, 0.0);
    }
    {
        double prev = window_loss(wp.lambda, omega, 0.01);
        int bad = 0;
        for (int i = 2; i <= 99; ++i) {
            const double cur = window_loss(wp.lambda, omega, i / 100.0);
            bad += !(cur < prev);
            prev = cur;
        }
        le("window loss H strictly decreasing (violations)", bad, 0.0);
    }

    {
        double worst = 0.0;
        for (int M = 1; M <= 4; ++M) {
            const auto f = build_filter(1.7, M, 0.01);
            double s = 0.0;
            for (const auto& c : f.coefficients) s += std::abs(c);
            worst = std::max(worst, std::abs(s - std::ldexp(1.0, M)) / std::ldexp(1.0, M));
        }
        le("filter l1 norm = 2^M (relative)", worst, 1e-15);
    }

    le("sampling bound n=100 rho=0.5", std::abs(sampling_bound(100, 0.5, 1.0) - 100.0), 0.0);
    le("sampling bound n=10 rho=0.1", std::abs(sampling_bound(10, 0.1, 1.0) - 50.0), 0.0);
    le("sampling bound n=10 rho=0.01 tau=0.05", std::abs(sampling_bound(10, 0.01, 0.05) - 51.0), 0.0);
    le("resolution limit n=1 snr=100", std::abs(resolution_limit(1.0, 100.0, 1) - kPi / 100.0), 1e-15);
    return rows;
}

std::string format_checks(const std::vector<CheckRow>& rows) {
    std::string out;
    char buf[256];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%-4s %-50s value=%-12.4g limit=%.4g\n", r.passed ? "PASS" : "FAIL",
                      r.name.c_str(), r.value, r.limit);
        out += buf;
    }
    return out;
}

}  // namespace specscan::harness
