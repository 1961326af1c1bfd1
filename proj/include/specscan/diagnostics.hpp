#pragma once

#include "specscan/model.hpp"
#include "specscan/windowing.hpp"

namespace specscan {

// Phi(x) = int_{-inf}^x exp(-t^2) dt, computed through erfc so negative tails
// keep full relative accuracy.
double phi(double x);

// exp(-x^2) / (2x), the tail majorant of Phi(-x) for x > 0.
double gaussian_tail_majorant(double x);

// log of 2 e^{lambda C^2} tv / (e^{2 pi C / h} - 1), evaluated without overflow.
double log_discretization_bound(double lambda, double C, double step, double tv_norm);

// Hypothesis on gamma required by the windowing error bound:
// gamma / sqrt(-ln gamma) <= sqrt(pi) / (tv sigma).
bool gamma_hypothesis_holds(double gamma, double tv_norm, double sigma);

struct ErrorBreakdown {
    double e1 = 0.0;  // discretisation of the continuous convolution
    double e2 = 0.0;  // band-limitation tail |k| > K
    double e3 = 0.0;  // Gaussian truncation |j| > Gamma
    double e4 = 0.0;  // noise through the truncated window
    double bound_rhs = 0.0;
    double log_e1_bound = 0.0;

    double total() const { return e1 + e2 + e3 + e4; }
};

// Continuous convolution (S_mu f) * G_lambda at omega, by adaptive quadrature.
cplx continuous_window_quadrature(const DiscreteSpectrum& spectrum, double mu, double lambda,
                                  double omega);

// Closed form of the same convolution.
cplx continuous_window_exact(const DiscreteSpectrum& spectrum, double mu, double lambda,
                             double omega);

// |(S_mu f (chi_[-Omega,Omega] - 1)) * G_lambda (omega)| by quadrature over |zeta| > Omega.
double model_error_quadrature(const DiscreteSpectrum& spectrum, double mu, double lambda,
                              double Omega, double omega);

ErrorBreakdown measure_errors(const DiscreteSpectrum& spectrum, const WindowPlan& plan,
                              const SampledMeasurement& measurement, double C);

// max |Y_win[l] / mass - sum_j a_j e^{-(y_j-mu)^2/(4 lambda)} e^{i (y_j-mu) w_l}|
// over output frequencies with |w_l| <= plan.omega_win.
double windowing_deviation(const DiscreteSpectrum& spectrum, const WindowPlan& plan,
                           const SampledMeasurement& measurement);

long sampling_bound(long n, double rho, double tau);
double resolution_limit(double omega_eff, double snr, long n);

}  // namespace specscan
