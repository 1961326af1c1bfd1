#pragma once

#include <iosfwd>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

#include "specscan/harness/config.hpp"
#include "specscan/harness/instances.hpp"
#include "specscan/scan.hpp"

namespace specscan::harness {

struct TrialRecord {
    std::size_t trial = 0;
    std::uint64_t seed = 0;
    std::string algo;
    double R = 0.0;
    std::size_t n = 0;
    double sigma = 0.0;
    EstimateReport report;
    double wall_s = 0.0;
    std::string error;  // non-empty when the trial failed
    nlohmann::json extra;
};

struct SummaryRow {
    std::size_t n;
    double R;
    double sigma;
    std::string algo;
    double mean_err;
    double median_err;
    double max_err;
    std::size_t missed;
    std::size_t spurious;
    double mean_wall_s;
};

inline constexpr const char* kCsvHeader =
    "n,R,sigma,algo,mean_err,median_err,max_err,missed,spurious,mean_wall_s";

ScanConfig scan_config_for(const ExperimentConfig& config, const Instance& instance);

std::uint64_t trial_seed(std::uint64_t base, std::size_t trial);

// Runs one algorithm ("music", "scan", "scanc", "detect", "synth") on one trial.
TrialRecord run_trial(const ExperimentConfig& config, std::size_t trial, const std::string& algo);

nlohmann::json to_json(const TrialRecord& r, bool include_timing = true);
nlohmann::json measurement_json(const SampledMeasurement& m);

std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records);
std::string format_csv(const std::vector<SummaryRow>& rows);

struct RunOutcome {
    std::vector<TrialRecord> records;
    std::vector<SummaryRow> summary;
    int status = 0;
};

// Executes all trials (sequential unless SPECSCAN_THREADS > 0).  Records are
// returned ordered by (R, algo, trial).
RunOutcome run(const ExperimentConfig& config);

// Writes JSON lines to `jsonl` and the CSV summary to `csv`.
void write_outputs(const RunOutcome& outcome, std::ostream& jsonl, std::ostream& csv);

// Least-squares slope of log(seconds) against log(n).
double fit_scaling(const std::vector<std::pair<double, double>>& timings);

}  // namespace specscan::harness
