#include "specscan/clustered.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

namespace specscan {

namespace {
using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}
}  // namespace

std::vector<double> cluster_means(std::vector<double> values, double radius) {
    if (!(radius > 0.0)) throw Error("linkage radius must be positive");
    std::sort(values.begin(), values.end());
    std::vector<double> out;
    std::size_t i = 0;
    while (i < values.size()) {
        std::size_t j = i + 1;
        while (j < values.size() && values[j] - values[j - 1] <= radius) ++j;
        out.push_back(std::accumulate(values.begin() + i, values.begin() + j, 0.0) /
                      static_cast<double>(j - i));
        i = j;
    }
    return out;
}

std::vector<double> detect_centers(const SampledMeasurement& measurement, const ScanConfig& config,
                                   std::optional<double> merge_radius,
                                   std::optional<double> detect_lambda) {
    ScanConfig cfg = config;
    if (detect_lambda) cfg.window.lambda = *detect_lambda;
    const auto report = scan_music(measurement, cfg);
    if (report.estimates.empty()) return {};
    return cluster_means(report.estimates, merge_radius.value_or(kPi / measurement.omega));
}

EstimateReport scan_music_c(const SampledMeasurement& measurement, const ScanConfig& config,
                            const ClusterModel& clusters, std::vector<ClusterTrace>* trace) {
    clusters.validate();
    EstimateReport report;
    const auto t_total = Clock::now();
    const int K = measurement.K();
    const double h = measurement.step;
    const WindowPlan base = make_plan(config.window, 0.0, h, K, measurement.omega,
                                      measurement.noise_level, tv_norm_estimate(measurement));
    for (std::size_t t = 0; t < clusters.centers.size(); ++t) {
        if (clusters.half_lengths[t] > base.r_tru)
            throw Error("cluster " + std::to_string(t) + " half length " +
                        std::to_string(clusters.half_lengths[t]) + " exceeds R_tru = " +
                        std::to_string(base.r_tru) + "; raise the trust level or lower lambda");
    }

    double t_cgm = 0.0, t_filter = 0.0, t_music = 0.0;
    std::vector<std::pair<double, std::size_t>> tagged;
    for (std::size_t t = 0; t < clusters.centers.size(); ++t) {
        const double mu = clusters.centers[t];
        WindowPlan plan = base;
        plan.mu = mu;
        auto t0 = Clock::now();
        const auto win = cgm(measurement, plan, config.cgm);
        t_cgm += seconds_since(t0);

        t0 = Clock::now();
        const auto targets = select_targets(clusters.centers, mu, base.r_tru, base.r_ess);
        auto orders = assign_orders(targets, mu, clusters.nearest_order, clusters.other_order);
        for (std::size_t i = 0; i < targets.size(); ++i) {
            const auto idx = static_cast<std::size_t>(
                std::find(clusters.centers.begin(), clusters.centers.end(), targets[i]) -
                clusters.centers.begin());
            if (auto it = clusters.order_override.find(idx); it != clusters.order_override.end())
                orders[i] = it->second;
        }
        CVec sub;
        double hsub;
        if (config.subsample_factor) {
            std::tie(sub, hsub) = sub1(win.samples, h, *config.subsample_factor);
        } else {
            std::tie(sub, hsub) = sub2(win.samples, h, orders, clusters.max_count, 1);
        }
        // The windowed data is centred at mu, so the interferers sit at c - mu.
        std::vector<double> rel(targets.size());
        for (std::size_t i = 0; i < targets.size(); ++i) rel[i] = targets[i] - mu;
        const CVec filtered = afsr(sub, hsub, rel, orders);
        t_filter += seconds_since(t0);
        if (trace) trace->push_back({t, targets, orders, filtered.size(), hsub});

        t0 = Clock::now();
        MusicConfig mc = config.music;
        mc.x_lo = -base.r_tru;
        mc.x_hi = base.r_tru;
        if (measurement.noise_level > 0.0 && !config.music.noise_bound) {
            // Filtering scales the entrywise noise bound by at most 2^(sum of orders).
            const int total = std::accumulate(orders.begin(), orders.end(), 0);
            mc.noise_bound = measurement.noise_level * win.mass * std::ldexp(1.0, total);
        }
        if (!clusters.counts.empty()) {
            mc.source_count = clusters.counts[t];
        } else {
            mc.source_count.reset();
            mc.rank_cap = clusters.max_count;
        }
        if (mc.source_count && static_cast<int>(filtered.size()) < 2 * *mc.source_count + 1)
            throw Error("cluster " + std::to_string(t) + ": filtered data too short (" +
                        std::to_string(filtered.size()) + " samples) for its source count");
        const auto res = music(filtered, hsub, mc);
        t_music += seconds_since(t0);
        for (double x : res.estimates) tagged.emplace_back(x + mu, t);
    }
    const auto t0 = Clock::now();
    report.estimates = merge_estimates(std::move(tagged),
                                       config.merge_radius.value_or(kPi / (4.0 * measurement.omega)));
    report.timings["merge"] = seconds_since(t0);
    report.timings["cgm"] = t_cgm;
    report.timings["filter"] = t_filter;
    report.timings["music"] = t_music;
    report.timings["total"] = seconds_since(t_total);
    return report;
}

}  // namespace specscan
