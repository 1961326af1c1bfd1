#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "specscan/common.hpp"

namespace specscan {

// Ground-truth discrete measure: sum_j a_j delta_{y_j}.
class DiscreteSpectrum {
public:
    DiscreteSpectrum() = default;
    DiscreteSpectrum(std::vector<double> positions, CVec amplitudes);
    // Unit amplitudes.
    explicit DiscreteSpectrum(std::vector<double> positions);

    const std::vector<double>& positions() const { return positions_; }
    const CVec& amplitudes() const { return amplitudes_; }
    std::size_t size() const { return positions_.size(); }

    double m_min() const;
    double d_min() const;  // +inf for a single component
    double tv_norm() const;
    double support_radius() const;  // max |y_j|

    DiscreteSpectrum shifted(double c) const;
    DiscreteSpectrum merged(const DiscreteSpectrum& other) const;

private:
    std::vector<double> positions_;
    CVec amplitudes_;
};

struct SampledMeasurement {
    CVec samples;
    double omega = 0.0;
    double step = 0.0;
    double noise_level = 0.0;
    std::uint64_t seed = 0;

    int K() const { return static_cast<int>((samples.size() - 1) / 2); }
    // Frequency of sample index `idx` in 0..2K.
    double frequency(std::size_t idx) const { return (static_cast<double>(idx) - K()) * step; }
};

enum class NoiseKind { disk, clipped_gaussian };

// Portable generator: mt19937_64 output sequence is fixed by the C++ standard;
// the conversions to doubles below are hand-written so that no
// implementation-defined distribution is involved.
class Rng {
public:
    explicit Rng(std::uint64_t seed);
    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);
    double normal();  // Box-Muller

private:
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

// Noise-free sample values at frequencies k*step, k = -K..K.
CVec noiseless_samples(const DiscreteSpectrum& spectrum, double omega, double step);

SampledMeasurement synthesize(const DiscreteSpectrum& spectrum, double omega, double step,
                              double noise_level, std::uint64_t seed,
                              NoiseKind kind = NoiseKind::disk);

double density(std::size_t n, double support_halfwidth, double omega);
double density(const DiscreteSpectrum& spectrum, double support_halfwidth, double omega);

struct EstimateReport {
    std::vector<double> estimates;
    std::vector<double> matched_error;  // per true spectrum; NaN when missed
    double rms_error = 0.0;
    std::size_t missed = 0;
    std::size_t spurious = 0;
    std::map<std::string, double> timings;
    std::vector<std::string> warnings;

    std::size_t matched() const;
    double max_matched_error() const;  // 0 when nothing matched
    double median_matched_error() const;
};

EstimateReport match_and_score(const DiscreteSpectrum& truth, std::vector<double> estimates,
                               double omega, std::optional<double> radius = std::nullopt);

// Scores `report.estimates` in place, keeping timings and warnings.
void score(EstimateReport& report, const DiscreteSpectrum& truth, double omega,
           std::optional<double> radius = std::nullopt);

}  // namespace specscan
