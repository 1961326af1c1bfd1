#include "specscan/windowing.hpp"

#include <cmath>

#include "specscan/diagnostics.hpp"
#include "specscan/kernels.hpp"

namespace specscan {

double gaussian_window(double lambda, double omega) {
    if (!(lambda > 0.0)) throw Error("gaussian window needs lambda > 0");
    return std::sqrt(lambda / kPi) * std::exp(-lambda * omega * omega);
}

int truncation_index(double lambda, double step, double gamma, int K) {
    if (!(lambda > 0.0) || !(step > 0.0)) throw Error("truncation index needs lambda, step > 0");
    if (!(gamma > 0.0 && gamma < 1.0)) throw Error("truncation level gamma must lie in (0,1)");
    // Closed-form start, then settle the comparison exactly as stated.
    const double s0 = std::sqrt(std::log(1.0 / gamma) / lambda) / step;
    long s = std::max(1L, static_cast<long>(std::floor(s0)) - 1);
    auto below = [&](long t) {
        const double x = static_cast<double>(t) * step;
        return std::exp(-lambda * x * x) <= gamma;
    };
    while (s > 1 && below(s - 1)) --s;
    while (!below(s)) ++s;
    if (s > K)
        throw Error("window wider than data: Gamma = " + std::to_string(s) +
                    " exceeds K = " + std::to_string(K) + " (raise gamma or lambda)");
    return static_cast<int>(s);
}

double region_radius(double lambda, double level) {
    if (!(lambda > 0.0)) throw Error("region radius needs lambda > 0");
    if (!(level > 0.0 && level <= 1.0)) throw Error("region level must lie in (0,1]");
    return std::sqrt(4.0 * lambda * std::log(1.0 / level));
}

Regions regions(double lambda, double trust_level, double essential_level) {
    if (!(essential_level > 0.0 && essential_level < trust_level && trust_level < 1.0))
        throw Error("regions need 0 < essential_level < trust_level < 1");
    return {region_radius(lambda, trust_level), region_radius(lambda, essential_level)};
}

double window_loss(double lambda, double omega, double epsilon) {
    const double s = std::sqrt(lambda);
    return phi(-s * epsilon * omega) + phi(s * (-2.0 * omega + epsilon * omega));
}

EffectiveCutoff effective_cutoff(double lambda, double omega, double tv_norm, double sigma) {
    if (!(lambda > 0.0) || !(omega > 0.0)) throw Error("effective cutoff needs lambda, omega > 0");
    if (!(sigma > 0.0) || !(tv_norm > 0.0))
        return {omega, 0.0, CutoffFlag::no_loss};
    const double threshold = std::sqrt(kPi) * sigma / tv_norm;
    if (threshold >= window_loss(lambda, omega, 0.0)) return {omega, 0.0, CutoffFlag::no_loss};
    if (window_loss(lambda, omega, 1.0) >= threshold) return {0.0, 1.0, CutoffFlag::useless};
    // H is decreasing on (0,1): invariant H(lo) >= threshold > H(hi).
    double lo = 0.0, hi = 1.0;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        if (window_loss(lambda, omega, mid) < threshold)
            hi = mid;
        else
            lo = mid;
    }
    return {omega * (1.0 - hi), hi, CutoffFlag::ok};
}

double model_error_bound(double lambda, double omega, double epsilon, double tv_norm) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw Error("model error bound needs epsilon in (0,1)");
    return tv_norm / std::sqrt(kPi) * window_loss(lambda, omega, epsilon);
}

WindowPlan make_plan(const WindowParams& params, double mu, double step, int K, double omega,
                     double sigma, double tv_norm) {
    WindowPlan plan;
    plan.lambda = params.lambda;
    plan.mu = mu;
    plan.gamma = params.gamma;
    plan.trust_level = params.trust_level;
    plan.essential_level = params.essential_level;
    plan.Gamma = truncation_index(params.lambda, step, params.gamma, K);
    const auto reg = regions(params.lambda, params.trust_level, params.essential_level);
    plan.r_tru = reg.r_tru;
    plan.r_ess = reg.r_ess;
    const auto cut = effective_cutoff(params.lambda, omega, tv_norm, sigma);
    plan.omega_win = cut.omega_win;
    plan.cutoff_flag = cut.flag;
    return plan;
}

CVec centralize(const SampledMeasurement& measurement, double mu) {
    const int K = measurement.K();
    const double h = measurement.step;
    CVec out(measurement.samples.size());
    for (int k = -K; k <= K; ++k)
        out[k + K] = measurement.samples[k + K] * std::polar(1.0, -mu * k * h);
    return out;
}

std::vector<double> window_weights(double lambda, double step, int Gamma) {
    std::vector<double> g(2 * Gamma + 1);
    for (int j = -Gamma; j <= Gamma; ++j) g[j + Gamma] = step * gaussian_window(lambda, j * step);
    return g;
}

WindowedMeasurement cgm(const SampledMeasurement& measurement, const WindowPlan& plan,
                        const CgmOptions& options) {
    const int K = measurement.K();
    if (measurement.samples.size() != static_cast<std::size_t>(2 * K + 1) || K < 1)
        throw Error("measurement must hold 2K+1 samples");
    if (plan.Gamma > K) throw Error("window wider than data (Gamma > K)");
    const double h = measurement.step;
    const CVec centred = centralize(measurement, plan.mu);
    const auto g = window_weights(plan.lambda, h, plan.Gamma);
    double mass = 0.0;
    for (double w : g) mass += w;

    bool use_fft = options.path == ConvolutionPath::fft;
    if (options.path == ConvolutionPath::automatic)
        use_fft = centred.size() * g.size() > options.fft_threshold;

    WindowedMeasurement out;
    out.samples = use_fft ? kernels::convolve_valid_fft(centred, g)
                          : kernels::convolve_valid(centred, g, options.exec);
    out.step = h;
    out.plan = plan;
    out.mass = mass;
    out.first_index = -K + plan.Gamma;
    return out;
}

}  // namespace specscan
