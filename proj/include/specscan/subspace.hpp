#pragma once

#include <optional>

#include <Eigen/Dense>

#include "specscan/common.hpp"

namespace specscan {

struct MusicConfig {
    std::optional<int> source_count;
    std::optional<double> sv_ratio_threshold;  // default: median rule
    double grid_density = 100.0;
    double x_lo = -1.0;
    double x_hi = 1.0;
    double peak_floor = 0.5;
    std::optional<int> rank_cap;
    // Entrywise bound on the sample noise; caps the estimated rank by the
    // number of singular values above sqrt(p q) * noise_bound.
    std::optional<double> noise_bound;
    Exec exec = Exec::parallel;
};

struct MusicResult {
    std::vector<double> estimates;
    std::vector<double> singular_values;
    std::vector<double> functional;  // J on the grid x_lo + i / N
    double grid_start = 0.0;
    double grid_step = 0.0;
    int rank = 0;
    bool no_signal = false;
};

Eigen::MatrixXcd hankel(const CVec& samples);

int estimate_rank(const std::vector<double>& singular_values, double ratio);

// max(10 * median(trailing half) / s_1, 1e-6).
double default_rank_ratio(const std::vector<double>& singular_values);

MusicResult music(const CVec& samples, double step, const MusicConfig& config);

}  // namespace specscan
