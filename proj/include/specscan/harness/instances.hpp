#pragma once

#include <cstdint>
#include <optional>

#include "specscan/annihilator.hpp"
#include "specscan/harness/config.hpp"
#include "specscan/model.hpp"

namespace specscan::harness {

// Breach of a geometric or sampling constraint detected before a run starts.
class Infeasible : public Error {
public:
    using Error::Error;
};

struct Instance {
    DiscreteSpectrum spectrum;
    std::optional<ClusterModel> clusters;
    SampledMeasurement measurement;  // after tau downsampling
    double density = 0.0;            // rho over [lo, hi] of the generated range
    double sweep_lo = 0.0;
    double sweep_hi = 0.0;
};

DiscreteSpectrum random_spectrum(double lo, double hi, double sep_min, double sep_max, Rng& rng);

struct ClusteredSpectrum {
    DiscreteSpectrum spectrum;
    ClusterModel clusters;
};
// `count` clusters of `size` spectra `spacing` apart, edge gap `gap`, centred on
// zero (plus a random offset in [0, centre spacing) when `rng` is given).
ClusteredSpectrum clustered_spectrum(int count, int size, double spacing, double gap, Rng* rng);

// Nyquist step <= pi/R and K_eff >= sampling_bound(n, rho, tau), rho taken over
// the support radius.  Throws Infeasible naming the violated constraint.
void check_feasible(const DiscreteSpectrum& spectrum, double omega, double step, double tau);

Instance make_instance(const ExperimentConfig& config, std::uint64_t trial_seed);

}  // namespace specscan::harness
