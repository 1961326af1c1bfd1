#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "specscan/model.hpp"
#include "specscan/windowing.hpp"

namespace specscan::harness {

enum class Mode { synth, music, scan, scanc, detect, bench, check };
enum class SpectrumSource { inline_list, random, clustered, file };

struct ExperimentConfig {
    Mode mode = Mode::scan;

    SpectrumSource source = SpectrumSource::random;
    std::vector<double> positions;   // inline
    std::vector<double> amplitudes;  // inline, real; empty = unit
    std::string spectrum_file;

    double random_lo = -100.0;
    double random_hi = 100.0;
    double sep_min = 5.0;
    double sep_max = 10.0;

    int cluster_count = 10;
    int cluster_size = 2;
    double cluster_spacing = 1.0;  // separation inside a cluster
    double cluster_gap = 0.0;      // edge-to-edge distance L between clusters
    bool random_offset = true;

    double omega = 1.0;
    double step = 1e-3;
    double sigma = 1e-3;
    std::uint64_t seed = 1;
    double tau = 1.0;
    NoiseKind noise = NoiseKind::disk;

    WindowParams window;
    std::optional<double> r1, r2;  // default: support +- margin
    double sweep_margin = 10.0;
    std::optional<int> subsample;  // nullopt = auto
    std::optional<double> density;  // nullopt = from the instance
    std::optional<double> merge_radius;

    std::optional<int> source_count;
    std::optional<double> sv_ratio;
    double grid_density = 100.0;
    double peak_floor = 0.5;

    int nearest_order = 3;
    int other_order = 2;
    bool known_centers = true;
    bool known_counts = true;
    std::optional<double> detect_lambda;

    std::vector<double> bench_ranges{200.0, 400.0, 800.0};
    std::vector<std::string> bench_algos{"music", "scan"};
    double bench_step_factor = 3.0;  // h = factor / R

    int repetitions = 1;
    std::string output;

    bool operator==(const ExperimentConfig&) const = default;
};

using KeyValues = std::map<std::string, std::string>;

// `key = value` lines, `#` comments, blank lines ignored.
KeyValues parse_key_values(const std::string& text);
std::string format_key_values(const KeyValues& kv);

ExperimentConfig from_key_values(const KeyValues& kv);
KeyValues to_key_values(const ExperimentConfig& config);

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

std::string mode_name(Mode m);
Mode parse_mode(const std::string& s);

// Spectrum files: `y re(a) im(a)` per line, `#` comments.
DiscreteSpectrum parse_spectrum(const std::string& text);
DiscreteSpectrum load_spectrum(const std::string& path);
std::string format_spectrum(const DiscreteSpectrum& s);

}  // namespace specscan::harness
