#pragma once

#include <optional>

#include "specscan/annihilator.hpp"
#include "specscan/scan.hpp"

namespace specscan {

// Single-linkage groups (gap <= radius) of sorted values, returned as group means.
std::vector<double> cluster_means(std::vector<double> values, double radius);

// Runs scan_music and collapses its estimates into cluster centres.
// `detect_lambda` optionally replaces the window parameter for this pass.
std::vector<double> detect_centers(const SampledMeasurement& measurement, const ScanConfig& config,
                                   std::optional<double> merge_radius = std::nullopt,
                                   std::optional<double> detect_lambda = std::nullopt);

struct ClusterTrace {
    std::size_t cluster;
    std::vector<double> targets;
    std::vector<int> orders;
    std::size_t filtered_length;
    double sub_step;
};

// With a fixed `config.subsample_factor` the windowed data is decimated by that
// factor; otherwise the Sub2 rule sizes it from N0 and the filter length.
EstimateReport scan_music_c(const SampledMeasurement& measurement, const ScanConfig& config,
                            const ClusterModel& clusters,
                            std::vector<ClusterTrace>* trace = nullptr);

}  // namespace specscan
