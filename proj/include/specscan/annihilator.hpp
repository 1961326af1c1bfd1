#pragma once

#include <map>
#include <optional>
#include <utility>

#include "specscan/common.hpp"

namespace specscan {

struct AnnihilatingFilter {
    double center = 0.0;  // NaN for composites
    int order = 0;
    double step = 0.0;
    CVec coefficients{cplx(1.0, 0.0)};
};

AnnihilatingFilter build_filter(double center, int order, double step);
AnnihilatingFilter compose(const std::vector<AnnihilatingFilter>& filters);

// Full convolution with the filter, sliced to 0-based indices |Q| .. |Y|-1.
CVec apply_filter(const CVec& samples, const AnnihilatingFilter& filter);

struct ClusterModel {
    std::vector<double> centers;
    std::vector<double> half_lengths;
    int max_count = 2;
    double cluster_gap = 0.0;
    std::vector<int> counts;  // optional per-cluster n_t (empty = unknown)
    int nearest_order = 3;
    int other_order = 2;
    std::map<std::size_t, int> order_override;  // by cluster index

    void validate() const;
    double max_half_length() const;
};

std::vector<double> select_targets(const std::vector<double>& all_centers, double mu,
                                   double r_tru, double r_ess);

// Orders for the given targets: the nearest one(s) to mu get `nearest`, others
// `other`.  Targets equidistant from mu (within 1e-9 relative) all count as nearest.
std::vector<int> assign_orders(const std::vector<double>& targets, double mu, int nearest, int other);

// F = ceil(|Y| / (2 N0 + sum(orders) + 1 + reserve)); `reserve` extra samples
// survive the filter (reserve = 1 leaves the 2 N0 + 1 that MUSIC needs).
std::pair<CVec, double> sub2(const CVec& samples, double step, const std::vector<int>& orders,
                             int max_count, std::size_t reserve = 0);

CVec afsr(const CVec& samples, double step, const std::vector<double>& centers,
          const std::vector<int>& orders);

double decay_bound(double tv_norm_cluster, double step, double half_length, int order,
                   double distance);

}  // namespace specscan
