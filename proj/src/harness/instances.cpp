#include "specscan/harness/instances.hpp"

#include <algorithm>
#include <cmath>

#include "specscan/diagnostics.hpp"
#include "specscan/scan.hpp"

namespace specscan::harness {

DiscreteSpectrum random_spectrum(double lo, double hi, double sep_min, double sep_max, Rng& rng) {
    if (!(hi > lo) || !(sep_min > 0.0) || !(sep_max >= sep_min))
        throw Infeasible("random spectrum needs lo < hi and 0 < sep_min <= sep_max");
    std::vector<double> y;
    double x = lo + rng.uniform(0.0, sep_min);
    while (x < hi) {
        y.push_back(x);
        x += rng.uniform(sep_min, sep_max);
    }
    if (y.empty()) throw Infeasible("random spectrum range holds no component");
    return DiscreteSpectrum(std::move(y));
}

ClusteredSpectrum clustered_spectrum(int count, int size, double spacing, double gap, Rng* rng) {
    if (count < 1 || size < 1) throw Infeasible("clustered spectrum needs count, size >= 1");
    if (size > 1 && !(spacing > 0.0)) throw Infeasible("cluster spacing must be positive");
    if (!(gap > 0.0)) throw Infeasible("cluster gap must be positive");
    const double D = 0.5 * (size - 1) * spacing;
    const double pitch = gap + 2.0 * D;
    const double offset = rng ? rng->uniform(0.0, pitch) : 0.0;
    ClusteredSpectrum out;
    std::vector<double> y;
    for (int t = 0; t < count; ++t) {
        const double c = (t - 0.5 * (count - 1)) * pitch + offset;
        out.clusters.centers.push_back(c);
        out.clusters.half_lengths.push_back(D);
        out.clusters.counts.push_back(size);
        for (int i = 0; i < size; ++i) y.push_back(c + (i - 0.5 * (size - 1)) * spacing);
    }
    out.clusters.max_count = size;
    out.clusters.cluster_gap = gap;
    out.spectrum = DiscreteSpectrum(std::move(y));
    return out;
}

void check_feasible(const DiscreteSpectrum& spectrum, double omega, double step, double tau) {
    const double R = spectrum.support_radius();
    if (R > 0.0 && step > kPi / R * (1.0 + 1e-12))
        throw Infeasible("Nyquist: step " + std::to_string(step) + " exceeds pi/R = " +
                         std::to_string(kPi / R));
    const long K = std::lround(omega / step);
    const long Keff = static_cast<long>(std::floor(tau * K + 1e-9));
    if (R > 0.0) {
        const double rho = density(spectrum.size(), R, omega);
        const long bound = sampling_bound(static_cast<long>(spectrum.size()), rho, tau);
        if (Keff < bound)
            throw Infeasible("sampling bound: K = " + std::to_string(Keff) + " below required " +
                             std::to_string(bound) + " for n = " + std::to_string(spectrum.size()));
    } else if (Keff < static_cast<long>(spectrum.size())) {
        throw Infeasible("sampling bound: K below n");
    }
}

Instance make_instance(const ExperimentConfig& config, std::uint64_t trial_seed) {
    Rng rng(trial_seed);
    Instance inst;
    double lo, hi;
    switch (config.source) {
        case SpectrumSource::inline_list: {
            if (config.positions.empty()) throw Error("config field 'spectrum.positions': empty");
            std::vector<double> p = config.positions;
            CVec a;
            for (std::size_t j = 0; j < p.size(); ++j)
                a.emplace_back(config.amplitudes.empty() ? 1.0 : config.amplitudes.at(j), 0.0);
            if (!config.amplitudes.empty() && config.amplitudes.size() != p.size())
                throw Error("config field 'spectrum.amplitudes': length differs from positions");
            inst.spectrum = DiscreteSpectrum(std::move(p), std::move(a));
            lo = inst.spectrum.positions().front();
            hi = inst.spectrum.positions().back();
            break;
        }
        case SpectrumSource::file:
            inst.spectrum = load_spectrum(config.spectrum_file);
            lo = inst.spectrum.positions().front();
            hi = inst.spectrum.positions().back();
            break;
        case SpectrumSource::random:
            inst.spectrum = random_spectrum(config.random_lo, config.random_hi, config.sep_min,
                                            config.sep_max, rng);
            lo = config.random_lo;
            hi = config.random_hi;
            break;
        case SpectrumSource::clustered: {
            auto cs = clustered_spectrum(config.cluster_count, config.cluster_size,
                                         config.cluster_spacing, config.cluster_gap,
                                         config.random_offset ? &rng : nullptr);
            cs.clusters.nearest_order = config.nearest_order;
            cs.clusters.other_order = config.other_order;
            if (!config.known_counts) cs.clusters.counts.clear();
            inst.spectrum = std::move(cs.spectrum);
            inst.clusters = std::move(cs.clusters);
            lo = inst.spectrum.positions().front();
            hi = inst.spectrum.positions().back();
            break;
        }
        default:
            throw Error("unknown spectrum source");
    }
    check_feasible(inst.spectrum, config.omega, config.step, config.tau);
    const double half = std::max(0.5 * (hi - lo), 0.5 * kPi / config.omega);
    inst.density = density(inst.spectrum.size(), half, config.omega);
    const bool random_range = config.source == SpectrumSource::random;
    inst.sweep_lo = config.r1.value_or(random_range ? lo : lo - config.sweep_margin);
    inst.sweep_hi = config.r2.value_or(random_range ? hi : hi + config.sweep_margin);
    auto m = synthesize(inst.spectrum, config.omega, config.step, config.sigma,
                        splitmix64(trial_seed ^ 0x5eedULL), config.noise);
    inst.measurement = config.tau < 1.0 ? downsample_tau(m, config.tau) : std::move(m);
    return inst;
}

}  // namespace specscan::harness
