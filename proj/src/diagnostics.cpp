#include "specscan/diagnostics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>

namespace specscan {

namespace {

constexpr double kWeightFloor = 1e-18;

// Distance beyond which the normalised Gaussian drops below kWeightFloor.
double gaussian_reach(double lambda) {
    return std::sqrt(std::log(std::sqrt(lambda / kPi) / kWeightFloor) / lambda);
}

template <class F>
double integrate(F f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    double err = 0.0;
    return gauss_kronrod<double, 61>::integrate(f, a, b, 6, 1e-15, &err);
}

cplx tone_sum(const DiscreteSpectrum& s, double mu, double zeta) {
    cplx v(0.0, 0.0);
    for (std::size_t j = 0; j < s.size(); ++j)
        v += s.amplitudes()[j] * std::polar(1.0, (s.positions()[j] - mu) * zeta);
    return v;
}

// Integral of tone_sum(zeta) G(omega - zeta) over [a, b], split to keep the
// quadrature resolving both the Gaussian and the oscillation.
cplx windowed_integral(const DiscreteSpectrum& s, double mu, double lambda, double omega,
                       double a, double b) {
    if (!(b > a)) return {0.0, 0.0};
    double maxfreq = 0.0;
    for (double y : s.positions()) maxfreq = std::max(maxfreq, std::abs(y - mu));
    const double width = std::min(0.5 / std::sqrt(lambda), 2.0 / std::max(maxfreq, 1e-12));
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / width)));
    cplx total(0.0, 0.0);
    for (int p = 0; p < pieces; ++p) {
        const double lo = a + (b - a) * p / pieces, hi = a + (b - a) * (p + 1) / pieces;
        auto re = [&](double z) { return (tone_sum(s, mu, z) * gaussian_window(lambda, omega - z)).real(); };
        auto im = [&](double z) { return (tone_sum(s, mu, z) * gaussian_window(lambda, omega - z)).imag(); };
        total += cplx(integrate(re, lo, hi), integrate(im, lo, hi));
    }
    return total;
}

}  // namespace

double phi(double x) { return 0.5 * std::sqrt(kPi) * std::erfc(-x); }

double gaussian_tail_majorant(double x) {
    if (!(x > 0.0)) throw Error("tail majorant needs x > 0");
    return std::exp(-x * x) / (2.0 * x);
}

double log_discretization_bound(double lambda, double C, double step, double tv_norm) {
    if (!(C > 0.0) || !(step > 0.0)) throw Error("discretisation bound needs C, step > 0");
    const double a = 2.0 * kPi * C / step;
    const double log_denominator = a + std::log1p(-std::exp(-a));  // log(e^a - 1)
    return std::log(2.0) + lambda * C * C + std::log(tv_norm) - log_denominator;
}

bool gamma_hypothesis_holds(double gamma, double tv_norm, double sigma) {
    if (!(gamma > 0.0 && gamma < 1.0)) return false;
    return gamma / std::sqrt(-std::log(gamma)) <= std::sqrt(kPi) / (tv_norm * sigma);
}

cplx continuous_window_quadrature(const DiscreteSpectrum& spectrum, double mu, double lambda,
                                  double omega) {
    const double reach = gaussian_reach(lambda);
    return windowed_integral(spectrum, mu, lambda, omega, omega - reach, omega + reach);
}

cplx continuous_window_exact(const DiscreteSpectrum& spectrum, double mu, double lambda,
                             double omega) {
    cplx v(0.0, 0.0);
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        const double xi = spectrum.positions()[j] - mu;
        v += spectrum.amplitudes()[j] * std::exp(-xi * xi / (4.0 * lambda)) *
             std::polar(1.0, xi * omega);
    }
    return v;
}

double model_error_quadrature(const DiscreteSpectrum& spectrum, double mu, double lambda,
                              double Omega, double omega) {
    const double reach = gaussian_reach(lambda);
    cplx v = windowed_integral(spectrum, mu, lambda, omega, Omega, std::max(Omega, omega + reach));
    v += windowed_integral(spectrum, mu, lambda, omega, std::min(-Omega, omega - reach), -Omega);
    return std::abs(v);
}

ErrorBreakdown measure_errors(const DiscreteSpectrum& spectrum, const WindowPlan& plan,
                              const SampledMeasurement& measurement, double C) {
    const double tv = spectrum.tv_norm();
    const double sigma = measurement.noise_level;
    if (!(C > 0.0)) throw Error("measure_errors needs C > 0");
    if (sigma > 0.0 && !gamma_hypothesis_holds(plan.gamma, tv, sigma)) {
        throw Error("gamma violates gamma/sqrt(-ln gamma) <= sqrt(pi)/(tv sigma); choose gamma "
                    "below the root of that inequality");
    }
    const double h = measurement.step;
    const double lambda = plan.lambda;
    const double mu = plan.mu;
    const int K = measurement.K();
    const long reach_steps = static_cast<long>(std::ceil(gaussian_reach(lambda) / h)) + 1;

    ErrorBreakdown out;

    // E1: Riemann sum over all k (truncated at negligible weight) vs quadrature.
    const double tail_remainder = 2.0 * tv / std::sqrt(kPi) * phi(-std::sqrt(lambda) * (reach_steps * h));
    for (double w : {0.0, 0.5 * plan.omega_win, -0.5 * plan.omega_win, plan.omega_win,
                     -plan.omega_win}) {
        const long centre = std::lround(w / h);
        cplx riemann(0.0, 0.0);
        for (long k = centre - reach_steps; k <= centre + reach_steps; ++k) {
            const double z = k * h;
            riemann += tone_sum(spectrum, mu, z) * gaussian_window(lambda, w - z);
        }
        riemann *= h;
        const cplx quad = continuous_window_quadrature(spectrum, mu, lambda, w);
        out.e1 = std::max(out.e1, std::abs(quad - riemann) + tail_remainder);
    }

    // E2: tails |k| > K for output frequencies |b h| <= omega_win.
    const long B = static_cast<long>(std::floor(plan.omega_win / h + 1e-9));
    for (long b = -B; b <= B; ++b) {
        const double w = b * h;
        cplx tail(0.0, 0.0);
        for (long k = K + 1; k <= b + reach_steps; ++k)
            tail += tone_sum(spectrum, mu, k * h) * gaussian_window(lambda, w - k * h);
        for (long k = -K - 1; k >= b - reach_steps; --k)
            tail += tone_sum(spectrum, mu, k * h) * gaussian_window(lambda, w - k * h);
        out.e2 = std::max(out.e2, h * std::abs(tail) + tail_remainder);
    }

    // E3 and E4 over the valid output range.
    const int Gamma = plan.Gamma;
    const auto noiseless = noiseless_samples(spectrum, measurement.omega, h);
    CVec f_cen(noiseless.size()), w_cen(noiseless.size());
    for (int k = -K; k <= K; ++k) {
        const cplx rot = std::polar(1.0, -mu * k * h);
        f_cen[k + K] = noiseless[k + K] * rot;
        w_cen[k + K] = (measurement.samples[k + K] - noiseless[k + K]) * rot;
    }
    const auto g = window_weights(lambda, h, Gamma);
    for (int l = -K + Gamma; l <= K - Gamma; ++l) {
        cplx trunc(0.0, 0.0);
        for (long j = Gamma + 1; j <= reach_steps; ++j) {
            const double wj = h * gaussian_window(lambda, j * h);
            if (l - j >= -K) trunc += f_cen[l - j + K] * wj;
            if (l + j <= K) trunc += f_cen[l + j + K] * wj;
        }
        out.e3 = std::max(out.e3, std::abs(trunc));
        cplx noise(0.0, 0.0);
        for (int j = -Gamma; j <= Gamma; ++j) noise += w_cen[l - j + K] * g[j + Gamma];
        out.e4 = std::max(out.e4, std::abs(noise));
    }

    out.log_e1_bound = log_discretization_bound(lambda, C, h, tv);
    out.bound_rhs = std::exp(out.log_e1_bound) + 3.0 * sigma;
    return out;
}

double windowing_deviation(const DiscreteSpectrum& spectrum, const WindowPlan& plan,
                           const SampledMeasurement& measurement) {
    const auto win = cgm(measurement, plan);
    double worst = 0.0;
    for (std::size_t l = 0; l < win.samples.size(); ++l) {
        const double w = win.frequency(l);
        if (std::abs(w) > plan.omega_win) continue;
        const cplx ideal = continuous_window_exact(spectrum, plan.mu, plan.lambda, w);
        worst = std::max(worst, std::abs(win.samples[l] / win.mass - ideal));
    }
    return worst;
}

namespace {
// Ceiling that ignores representation noise of exact integers (10/0.2, 0.05/0.01*10).
long robust_ceil(double x) { return static_cast<long>(std::ceil(x - 1e-9 * std::max(1.0, std::abs(x)))); }
}  // namespace

long sampling_bound(long n, double rho, double tau) {
    if (n < 1 || !(rho > 0.0) || !(tau > 0.0 && tau <= 1.0))
        throw Error("sampling bound needs n >= 1, rho > 0, tau in (0,1]");
    const double nd = static_cast<double>(n);
    if (tau == 1.0) return std::max(n, robust_ceil(nd / (2.0 * rho)));
    return std::max(2 * n, robust_ceil(tau / rho * nd) + 1);
}

double resolution_limit(double omega_eff, double snr, long n) {
    if (!(snr > 0.0) || n < 1 || !(omega_eff > 0.0))
        throw Error("resolution limit needs snr > 0, n >= 1, omega_eff > 0");
    return kPi / omega_eff * std::pow(snr, -1.0 / (2.0 * static_cast<double>(n) - 1.0));
}

}  // namespace specscan
