#include "specscan/annihilator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specscan/kernels.hpp"

namespace specscan {

AnnihilatingFilter build_filter(double center, int order, double step) {
    if (order < 1) throw Error("filter order must be >= 1");
    AnnihilatingFilter f;
    f.center = center;
    f.order = order;
    f.step = step;
    f.coefficients.assign(order + 1, cplx(0.0, 0.0));
    double binom = 1.0;
    for (int l = 0; l <= order; ++l) {
        // (-e^{i c h})^l evaluated directly, not by repeated multiplication.
        const double sign = (l % 2) ? -1.0 : 1.0;
        f.coefficients[l] = sign * binom * std::polar(1.0, l * center * step);
        binom = binom * (order - l) / (l + 1);
    }
    return f;
}

AnnihilatingFilter compose(const std::vector<AnnihilatingFilter>& filters) {
    if (filters.empty()) throw Error("compose needs at least one filter");
    if (filters.size() == 1) return filters.front();
    AnnihilatingFilter out;
    out.center = std::numeric_limits<double>::quiet_NaN();
    out.step = filters.front().step;
    out.order = 0;
    out.coefficients = {cplx(1.0, 0.0)};
    for (const auto& f : filters) {
        if (f.step != out.step) throw Error("cannot compose filters built for different steps");
        out.coefficients = kernels::convolve_full(out.coefficients, f.coefficients);
        out.order += f.order;
    }
    return out;
}

CVec apply_filter(const CVec& samples, const AnnihilatingFilter& filter) {
    const std::size_t q = filter.coefficients.size();
    if (samples.size() <= q) throw Error("filter longer than the data");
    const auto full = kernels::convolve_full(samples, filter.coefficients);
    return CVec(full.begin() + static_cast<std::ptrdiff_t>(q),
                full.begin() + static_cast<std::ptrdiff_t>(samples.size()));
}

void ClusterModel::validate() const {
    if (centers.empty()) throw Error("cluster model has no centres");
    if (half_lengths.size() != centers.size())
        throw Error("cluster model: one half length per centre required");
    if (!counts.empty() && counts.size() != centers.size())
        throw Error("cluster model: counts must be empty or one per centre");
    if (max_count < 1) throw Error("cluster model: max_count must be >= 1");
    for (int n : counts)
        if (n < 1 || n > max_count) throw Error("cluster model: counts must lie in 1..max_count");
    const double D = max_half_length();
    for (std::size_t t = 1; t < centers.size(); ++t) {
        if (!(centers[t] > centers[t - 1])) throw Error("cluster centres must be increasing");
        if (centers[t] - half_lengths[t] <= centers[t - 1] + half_lengths[t - 1])
            throw Error("cluster intervals must be pairwise disjoint");
        if (centers[t] - centers[t - 1] < cluster_gap + 2.0 * D - 1e-9)
            throw Error("cluster centre gap below L + 2D");
    }
}

double ClusterModel::max_half_length() const {
    return half_lengths.empty() ? 0.0 : *std::max_element(half_lengths.begin(), half_lengths.end());
}

std::vector<double> select_targets(const std::vector<double>& all_centers, double mu,
                                   double r_tru, double r_ess) {
    if (!(r_tru < r_ess)) throw Error("select_targets needs r_tru < r_ess");
    std::vector<double> out;
    for (double c : all_centers) {
        const double d = std::abs(c - mu);
        if (d > r_tru && d <= r_ess) out.push_back(c);
    }
    return out;
}

std::vector<int> assign_orders(const std::vector<double>& targets, double mu, int nearest, int other) {
    std::vector<int> orders(targets.size(), other);
    if (targets.empty()) return orders;
    double dmin = std::numeric_limits<double>::infinity();
    for (double c : targets) dmin = std::min(dmin, std::abs(c - mu));
    for (std::size_t i = 0; i < targets.size(); ++i)
        if (std::abs(targets[i] - mu) <= dmin * (1.0 + 1e-9)) orders[i] = nearest;
    return orders;
}

std::pair<CVec, double> sub2(const CVec& samples, double step, const std::vector<int>& orders,
                             int max_count, std::size_t reserve) {
    const std::size_t filter_len =
        static_cast<std::size_t>(std::accumulate(orders.begin(), orders.end(), 0)) + 1;
    const std::size_t need = 2 * static_cast<std::size_t>(max_count) + filter_len + reserve;
    const std::size_t n = samples.size();
    const std::size_t F = std::max<std::size_t>(1, (n + need - 1) / need);
    const std::size_t kept = (n + F - 1) / F;
    if (kept < need)
        throw Error("Sub2 keeps " + std::to_string(kept) + " samples, needs " +
                    std::to_string(need));
    CVec out(kept);
    for (std::size_t i = 0; i < kept; ++i) out[i] = samples[i * F];
    return {std::move(out), step * static_cast<double>(F)};
}

CVec afsr(const CVec& samples, double step, const std::vector<double>& centers,
          const std::vector<int>& orders) {
    if (centers.size() != orders.size()) throw Error("afsr: one order per centre required");
    if (centers.empty()) return samples;
    std::vector<AnnihilatingFilter> fs;
    for (std::size_t i = 0; i < centers.size(); ++i) fs.push_back(build_filter(centers[i], orders[i], step));
    const auto Q = compose(fs);
    if (samples.size() <= Q.coefficients.size() + 1)
        throw Error("afsr: data not longer than the composite filter");
    auto out = apply_filter(samples, Q);
    if (out.size() < 3) throw Error("afsr: filtered output shorter than 3 samples");
    return out;
}

double decay_bound(double tv_norm_cluster, double step, double half_length, int order,
                   double distance) {
    if (!(distance > 0.0)) throw Error("decay bound needs a positive distance");
    const double hd = step * half_length;
    return tv_norm_cluster / kPi * std::pow(hd, order) * std::exp(hd) / distance;
}

}  // namespace specscan
