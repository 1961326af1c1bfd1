#pragma once

#include <cstddef>

#include "specscan/model.hpp"

namespace specscan {

double gaussian_window(double lambda, double omega);

// Smallest s in 1..K with exp(-lambda (s step)^2) <= gamma; throws when none exists.
int truncation_index(double lambda, double step, double gamma, int K);

// sqrt(4 lambda ln(1/level)), level in (0, 1].
double region_radius(double lambda, double level);

struct Regions {
    double r_tru;
    double r_ess;
};
Regions regions(double lambda, double trust_level, double essential_level);

enum class CutoffFlag { ok, no_loss, useless };
struct EffectiveCutoff {
    double omega_win;
    double epsilon;
    CutoffFlag flag;
};

// H(eps) = Phi(-sqrt(lambda) eps Omega) + Phi(sqrt(lambda)(-2 Omega + eps Omega)).
double window_loss(double lambda, double omega, double epsilon);
EffectiveCutoff effective_cutoff(double lambda, double omega, double tv_norm, double sigma);
double model_error_bound(double lambda, double omega, double epsilon, double tv_norm);

struct WindowParams {
    double lambda = 100.0;
    double gamma = 1e-3;
    double trust_level = 0.95;
    double essential_level = 1e-3;
    bool operator==(const WindowParams&) const = default;
};

struct WindowPlan {
    double lambda;
    double mu;
    double gamma;
    double trust_level;
    double essential_level;
    int Gamma;
    double r_tru;
    double r_ess;
    double omega_win;
    CutoffFlag cutoff_flag;
};

// Resolves the derived quantities for data with the given step / half count K.
// `tv_norm` feeds the effective cutoff; pass 0 when unknown (omega_win = omega).
WindowPlan make_plan(const WindowParams& params, double mu, double step, int K, double omega,
                     double sigma, double tv_norm);

struct WindowedMeasurement {
    CVec samples;
    double step;
    WindowPlan plan;
    double mass;           // h * sum_{|j|<=Gamma} G(j h)
    int first_index;       // frequency index (in -K..K) of samples[0]

    double frequency(std::size_t l) const { return (first_index + static_cast<double>(l)) * step; }
};

enum class ConvolutionPath { automatic, direct, fft };

struct CgmOptions {
    ConvolutionPath path = ConvolutionPath::automatic;
    std::size_t fft_threshold = std::size_t{1} << 23;  // |Y| * (2 Gamma + 1)
    Exec exec = Exec::parallel;
};

// Y_k exp(-i mu k h); a unitary (diagonal, unimodular) map.
CVec centralize(const SampledMeasurement& measurement, double mu);

// h * G(j h), j = -Gamma..Gamma.
std::vector<double> window_weights(double lambda, double step, int Gamma);

WindowedMeasurement cgm(const SampledMeasurement& measurement, const WindowPlan& plan,
                        const CgmOptions& options = {});

}  // namespace specscan
