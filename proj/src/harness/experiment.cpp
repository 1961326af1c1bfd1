#include "specscan/harness/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include <omp.h>

#include "specscan/clustered.hpp"
#include "specscan/subspace.hpp"

namespace specscan::harness {

namespace {
using Clock = std::chrono::steady_clock;

int trial_threads() {
    const char* env = std::getenv("SPECSCAN_THREADS");
    if (!env || !*env) return 0;
    const int n = std::atoi(env);
    return n > 0 ? n : 0;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}
}  // namespace

std::uint64_t trial_seed(std::uint64_t base, std::size_t trial) {
    return splitmix64(base + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(trial));
}

ScanConfig scan_config_for(const ExperimentConfig& config, const Instance& instance) {
    ScanConfig sc;
    sc.window = config.window;
    sc.r1 = instance.sweep_lo;
    sc.r2 = instance.sweep_hi;
    sc.subsample_factor = config.subsample;
    sc.density_prior = config.density ? config.density : std::optional<double>(instance.density);
    sc.merge_radius = config.merge_radius;
    sc.music.grid_density = config.grid_density;
    sc.music.peak_floor = config.peak_floor;
    sc.music.sv_ratio_threshold = config.sv_ratio;
    sc.music.source_count = config.source_count;
    return sc;
}

TrialRecord run_trial(const ExperimentConfig& config, std::size_t trial, const std::string& algo) {
    TrialRecord rec;
    rec.trial = trial;
    rec.seed = trial_seed(config.seed, trial);
    rec.algo = algo;
    rec.sigma = config.sigma;
    try {
        const Instance inst = make_instance(config, rec.seed);
        rec.n = inst.spectrum.size();
        rec.R = config.source == SpectrumSource::random
                    ? std::max(std::abs(config.random_lo), std::abs(config.random_hi))
                    : inst.spectrum.support_radius();
        const auto& m = inst.measurement;
        const ScanConfig sc = scan_config_for(config, inst);
        const auto t0 = Clock::now();
        if (algo == "synth") {
            rec.extra["measurement"] = measurement_json(m);
            rec.report = match_and_score(inst.spectrum, {}, m.omega);
        } else if (algo == "music") {
            MusicConfig mc = sc.music;
            mc.x_lo = inst.sweep_lo;
            mc.x_hi = inst.sweep_hi;
            if (!mc.source_count) mc.source_count = static_cast<int>(inst.spectrum.size());
            const auto res = music(m.samples, m.step, mc);
            rec.report.estimates = res.estimates;
        } else if (algo == "scan") {
            rec.report = scan_music(m, sc);
        } else if (algo == "scanc" || algo == "detect") {
            if (!inst.clusters) throw Error("mode requires spectrum.source = clustered");
            ClusterModel model = *inst.clusters;
            if (algo == "detect" || !config.known_centers) {
                auto centers = detect_centers(m, sc, std::nullopt, config.detect_lambda);
                rec.extra["detected_centers"] = centers;
                if (algo == "detect") {
                    const DiscreteSpectrum truth_centers(model.centers);
                    rec.report = match_and_score(truth_centers, centers, m.omega);
                } else {
                    model.centers = centers;
                    model.half_lengths.assign(centers.size(), inst.clusters->max_half_length());
                    model.counts.clear();
                    model.cluster_gap = 0.0;
                }
            }
            if (algo == "scanc") rec.report = scan_music_c(m, sc, model);
        } else {
            throw Error("unknown algorithm " + algo);
        }
        rec.wall_s = std::chrono::duration<double>(Clock::now() - t0).count();
        if (algo != "synth" && algo != "detect") score(rec.report, inst.spectrum, m.omega);
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

nlohmann::json measurement_json(const SampledMeasurement& m) {
    nlohmann::json j;
    j["omega"] = m.omega;
    j["step"] = m.step;
    j["sigma"] = m.noise_level;
    j["seed"] = m.seed;
    auto arr = nlohmann::json::array();
    for (const auto& s : m.samples) arr.push_back({s.real(), s.imag()});
    j["samples"] = std::move(arr);
    return j;
}

nlohmann::json to_json(const TrialRecord& r, bool include_timing) {
    nlohmann::json j;
    j["trial"] = r.trial;
    j["seed"] = r.seed;
    j["algo"] = r.algo;
    j["n"] = r.n;
    j["R"] = r.R;
    j["sigma"] = r.sigma;
    if (!r.error.empty()) {
        j["error"] = r.error;
        return j;
    }
    j["estimates"] = r.report.estimates;
    auto me = nlohmann::json::array();
    for (double e : r.report.matched_error) me.push_back(std::isnan(e) ? nlohmann::json() : nlohmann::json(e));
    j["matched_error"] = std::move(me);
    j["rms_error"] = r.report.rms_error;
    j["missed"] = r.report.missed;
    j["spurious"] = r.report.spurious;
    if (!r.report.warnings.empty()) j["warnings"] = r.report.warnings;
    for (const auto& [k, v] : r.extra.items()) j[k] = v;
    if (include_timing) {
        j["wall_s"] = r.wall_s;
        j["timings"] = r.report.timings;
    }
    return j;
}

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
    std::map<std::tuple<double, std::string>, std::vector<const TrialRecord*>> groups;
    std::vector<std::tuple<double, std::string>> order;
    for (const auto& r : records) {
        if (!r.error.empty() || r.algo == "synth") continue;
        const auto key = std::make_tuple(r.R, r.algo);
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&r);
    }
    std::vector<SummaryRow> rows;
    for (const auto& key : order) {
        const auto& g = groups[key];
        std::vector<double> errs;
        double wall = 0.0, nsum = 0.0;
        std::size_t missed = 0, spurious = 0;
        for (const auto* r : g) {
            for (double e : r->report.matched_error)
                if (!std::isnan(e)) errs.push_back(e);
            wall += r->wall_s;
            nsum += static_cast<double>(r->n);
            missed += r->report.missed;
            spurious += r->report.spurious;
        }
        double mean = 0.0, mx = 0.0;
        for (double e : errs) {
            mean += e;
            mx = std::max(mx, e);
        }
        if (!errs.empty()) mean /= static_cast<double>(errs.size());
        rows.push_back({static_cast<std::size_t>(std::lround(nsum / g.size())), std::get<0>(key),
                        g.front()->sigma, std::get<1>(key), mean, median(errs), mx, missed, spurious,
                        wall / static_cast<double>(g.size())});
    }
    return rows;
}

std::string format_csv(const std::vector<SummaryRow>& rows) {
    std::ostringstream os;
    os.precision(10);
    os << kCsvHeader << "\n";
    for (const auto& r : rows)
        os << r.n << ',' << r.R << ',' << r.sigma << ',' << r.algo << ',' << r.mean_err << ','
           << r.median_err << ',' << r.max_err << ',' << r.missed << ',' << r.spurious << ','
           << r.mean_wall_s << "\n";
    return os.str();
}

RunOutcome run(const ExperimentConfig& config) {
    struct Job {
        ExperimentConfig cfg;
        std::size_t trial;
        std::string algo;
    };
    std::vector<Job> jobs;
    const auto reps = static_cast<std::size_t>(config.repetitions);
    switch (config.mode) {
        case Mode::bench:
            for (double R : config.bench_ranges) {
                ExperimentConfig c = config;
                c.source = SpectrumSource::random;
                c.random_lo = 0.0;
                c.random_hi = R;
                // Largest step not above factor/R that divides omega.
                c.step = c.omega / std::ceil(c.omega * R / config.bench_step_factor);
                for (const auto& a : config.bench_algos)
                    for (std::size_t t = 0; t < reps; ++t) jobs.push_back({c, t, a});
            }
            break;
        case Mode::check:
            throw Error("check mode is handled by the diagnostics table");
        default:
            for (std::size_t t = 0; t < reps; ++t) jobs.push_back({config, t, mode_name(config.mode)});
    }

    RunOutcome out;
    out.records.resize(jobs.size());
    const int threads = trial_threads();
    if (threads > 0) {
#pragma omp parallel for num_threads(threads) schedule(dynamic)
        for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(jobs.size()); ++i)
            out.records[i] = run_trial(jobs[i].cfg, jobs[i].trial, jobs[i].algo);
    } else {
        for (std::size_t i = 0; i < jobs.size(); ++i)
            out.records[i] = run_trial(jobs[i].cfg, jobs[i].trial, jobs[i].algo);
    }
    for (const auto& r : out.records)
        if (!r.error.empty()) out.status = 1;
    out.summary = summarize(out.records);
    return out;
}

void write_outputs(const RunOutcome& outcome, std::ostream& jsonl, std::ostream& csv) {
    for (const auto& r : outcome.records) jsonl << to_json(r).dump() << "\n";
    csv << format_csv(outcome.summary);
}

double fit_scaling(const std::vector<std::pair<double, double>>& timings) {
    if (timings.size() < 3) throw Error("fit_scaling needs at least 3 points");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < timings.size(); ++i) {
        const auto [n, t] = timings[i];
        if (!(t > 0.0) || !(n > 0.0)) throw Error("fit_scaling needs positive n and times");
        if (i > 0 && !(n > timings[i - 1].first)) throw Error("fit_scaling needs increasing n");
        const double x = std::log(n), y = std::log(t);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double m = static_cast<double>(timings.size());
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace specscan::harness
