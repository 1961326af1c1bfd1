#include "specscan/scan.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace specscan {

namespace {
using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}
}  // namespace

std::pair<CVec, double> sub1(const CVec& samples, double step, int factor) {
    if (factor < 1) throw Error("subsample factor must be >= 1");
    const std::size_t count = samples.size() / static_cast<std::size_t>(factor);
    if (count < 3)
        throw Error("subsampling by " + std::to_string(factor) + " leaves " +
                    std::to_string(count) + " samples (need >= 3)");
    CVec out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = samples[i * factor];
    return {std::move(out), step * factor};
}

int auto_subsample_factor(std::size_t win_length, double r_ess, double rho, double step) {
    if (!(rho > 0.0) || !(r_ess > 0.0) || !(step > 0.0))
        throw Error("auto subsample factor needs rho, r_ess, step > 0");
    const double by_count = static_cast<double>(win_length) / (4.0 * r_ess * rho);
    const double by_nyquist = kPi / (r_ess * step);
    const double f = std::floor(std::min(by_count, by_nyquist));
    return f < 1.0 ? 1 : static_cast<int>(std::min(f, 1e9));
}

std::pair<std::vector<ScanCell>, bool> center_grid(double r1, double r2, double r_tru) {
    if (!(r2 > r1)) throw Error("sweep interval must satisfy R1 < R2");
    if (!(r_tru > 0.0)) throw Error("trust radius must be positive");
    std::vector<ScanCell> cells;
    if (r2 - r1 < 2.0 * r_tru) {
        const double mid = 0.5 * (r1 + r2);
        cells.push_back({mid, r1, r2});
        return {cells, true};
    }
    const double last = r2 - r_tru;
    for (long i = 0;; ++i) {
        const double mu = r1 + r_tru + 2.0 * r_tru * static_cast<double>(i);
        if (mu > last + 1e-9 * std::max(1.0, std::abs(last))) break;
        // Adjacent cells share the boundary value exactly.
        cells.push_back({mu, cells.empty() ? r1 : cells.back().hi, mu + r_tru});
    }
    if (cells.back().hi < r2 - 1e-12 * std::max(1.0, std::abs(r2)))
        cells.push_back({last, cells.back().hi, r2});
    return {cells, false};
}

std::vector<double> merge_estimates(std::vector<std::pair<double, std::size_t>> tagged,
                                    double radius) {
    std::sort(tagged.begin(), tagged.end());
    std::vector<double> out;
    std::size_t i = 0;
    while (i < tagged.size()) {
        std::vector<std::size_t> windows{tagged[i].second};
        double sum = tagged[i].first;
        std::size_t j = i + 1;
        while (j < tagged.size() && tagged[j].first - tagged[j - 1].first < radius &&
               std::find(windows.begin(), windows.end(), tagged[j].second) == windows.end()) {
            windows.push_back(tagged[j].second);
            sum += tagged[j].first;
            ++j;
        }
        out.push_back(sum / static_cast<double>(j - i));
        i = j;
    }
    return out;
}

double tv_norm_estimate(const SampledMeasurement& measurement) {
    double m = 0.0;
    for (const auto& s : measurement.samples) m = std::max(m, std::abs(s));
    return m;
}

EstimateReport scan_music(const SampledMeasurement& measurement, const ScanConfig& config) {
    EstimateReport report;
    const auto t_total = Clock::now();
    const int K = measurement.K();
    const double h = measurement.step;
    const double tv = tv_norm_estimate(measurement);
    const WindowPlan base =
        make_plan(config.window, 0.0, h, K, measurement.omega, measurement.noise_level, tv);
    const auto [cells, degenerate] = center_grid(config.r1, config.r2, base.r_tru);
    if (degenerate)
        report.warnings.push_back("sweep interval shorter than 2 R_tru; using a single centre");

    const std::size_t win_len = measurement.samples.size() - 2 * static_cast<std::size_t>(base.Gamma);
    int factor;
    if (config.subsample_factor) {
        factor = *config.subsample_factor;
    } else {
        if (!config.density_prior) throw Error("auto subsample factor requires a density prior");
        factor = auto_subsample_factor(win_len, base.r_ess, *config.density_prior, h);
    }
    MusicConfig mc = config.music;
    if (!mc.source_count && config.density_prior && !mc.rank_cap)
        mc.rank_cap = static_cast<int>(std::ceil(2.0 * base.r_ess * *config.density_prior)) + 2;

    double t_cgm = 0.0, t_sub = 0.0, t_music = 0.0;
    std::vector<std::pair<double, std::size_t>> tagged;
    for (std::size_t c = 0; c < cells.size(); ++c) {
        WindowPlan plan = base;
        plan.mu = cells[c].mu;
        auto t0 = Clock::now();
        const auto win = cgm(measurement, plan, config.cgm);
        t_cgm += seconds_since(t0);
        t0 = Clock::now();
        const auto [sub, hsub] = sub1(win.samples, h, factor);
        t_sub += seconds_since(t0);
        t0 = Clock::now();
        if (measurement.noise_level > 0.0 && !config.music.noise_bound)
            mc.noise_bound = measurement.noise_level * win.mass;
        mc.x_lo = cells[c].lo - cells[c].mu;
        mc.x_hi = cells[c].hi - cells[c].mu;
        const auto res = music(sub, hsub, mc);
        t_music += seconds_since(t0);
        for (double x : res.estimates) tagged.emplace_back(x + cells[c].mu, c);
    }
    const auto t0 = Clock::now();
    report.estimates =
        merge_estimates(std::move(tagged), config.merge_radius.value_or(kPi / (4.0 * measurement.omega)));
    report.timings["merge"] = seconds_since(t0);
    report.timings["cgm"] = t_cgm;
    report.timings["subsample"] = t_sub;
    report.timings["music"] = t_music;
    report.timings["total"] = seconds_since(t_total);
    return report;
}

SampledMeasurement downsample_tau(const SampledMeasurement& measurement, double tau) {
    if (!(tau > 0.0 && tau <= 1.0)) throw Error("tau must lie in (0,1]");
    const int K = measurement.K();
    const int Kt = static_cast<int>(std::floor(tau * K + 1e-9));
    if (2 * Kt + 1 < 3) throw Error("downsampling leaves fewer than 3 samples");
    SampledMeasurement out = measurement;
    out.samples.assign(measurement.samples.begin() + (K - Kt),
                       measurement.samples.begin() + (K + Kt + 1));
    out.omega = Kt * measurement.step;
    return out;
}

}  // namespace specscan
