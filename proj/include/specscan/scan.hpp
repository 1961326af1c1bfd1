#pragma once

#include <optional>
#include <utility>

#include "specscan/model.hpp"
#include "specscan/subspace.hpp"
#include "specscan/windowing.hpp"

namespace specscan {

struct ScanConfig {
    WindowParams window;
    double r1 = -10.0;
    double r2 = 10.0;
    std::optional<int> subsample_factor;  // nullopt = auto
    std::optional<double> density_prior;
    MusicConfig music;  // search interval is overwritten per window
    std::optional<double> merge_radius;  // default pi / (4 Omega)
    CgmOptions cgm;
};

std::pair<CVec, double> sub1(const CVec& samples, double step, int factor);

int auto_subsample_factor(std::size_t win_length, double r_ess, double rho, double step);

// One window of the sweep: centre mu and the half-open ownership cell [lo, hi).
struct ScanCell {
    double mu;
    double lo;
    double hi;
};

// Centres R1+R_tru : 2R_tru : R2-R_tru.  If the last cell stops short of R2 a
// final centre R2-R_tru is appended whose cell starts where the previous ends.
// An empty grid yields one centre at the midpoint (second member true).
std::pair<std::vector<ScanCell>, bool> center_grid(double r1, double r2, double r_tru);

// Collapses estimates closer than `radius` that came from different windows.
std::vector<double> merge_estimates(std::vector<std::pair<double, std::size_t>> tagged,
                                    double radius);

// sum_k |Y_k| bound from below: max_k |Y_k| (a lower bound for the TV norm).
double tv_norm_estimate(const SampledMeasurement& measurement);

EstimateReport scan_music(const SampledMeasurement& measurement, const ScanConfig& config);

SampledMeasurement downsample_tau(const SampledMeasurement& measurement, double tau);

}  // namespace specscan
