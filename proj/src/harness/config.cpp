#include "specscan/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace specscan::harness {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw Error("config field '" + key + "': not a number: " + v);
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw Error("config field '" + key + "': not an integer: " + v);
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw Error("config field '" + key + "': expected true/false, got " + v);
}

std::vector<std::string> words(const std::string& v) {
    std::istringstream is(v);
    std::vector<std::string> out;
    std::string w;
    while (is >> w) {
        for (auto& c : w)
            if (c == ',') c = ' ';
        std::istringstream inner(w);
        std::string part;
        while (inner >> part) out.push_back(part);
    }
    return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& w : words(v)) out.push_back(to_double(key, w));
    return out;
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ' ';
        if constexpr (std::is_same_v<T, double>)
            s += fmt(xs[i]);
        else
            s += xs[i];
    }
    return s;
}

const char* source_name(SpectrumSource s) {
    switch (s) {
        case SpectrumSource::inline_list: return "inline";
        case SpectrumSource::random: return "random";
        case SpectrumSource::clustered: return "clustered";
        case SpectrumSource::file: return "file";
    }
    return "random";
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error("config line " + std::to_string(lineno) + ": expected 'key = value'");
        const auto key = trim(line.substr(0, eq));
        if (key.empty()) throw Error("config line " + std::to_string(lineno) + ": empty key");
        kv[key] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::string format_key_values(const KeyValues& kv) {
    std::string out;
    for (const auto& [k, v] : kv) out += k + " = " + v + "\n";
    return out;
}

std::string mode_name(Mode m) {
    switch (m) {
        case Mode::synth: return "synth";
        case Mode::music: return "music";
        case Mode::scan: return "scan";
        case Mode::scanc: return "scanc";
        case Mode::detect: return "detect";
        case Mode::bench: return "bench";
        case Mode::check: return "check";
    }
    return "scan";
}

Mode parse_mode(const std::string& s) {
    for (Mode m : {Mode::synth, Mode::music, Mode::scan, Mode::scanc, Mode::detect, Mode::bench,
                   Mode::check})
        if (mode_name(m) == s) return m;
    throw Error("config field 'mode': unknown mode " + s);
}

ExperimentConfig from_key_values(const KeyValues& kv) {
    ExperimentConfig c;
    std::set<std::string> seen;
    auto get = [&](const std::string& k) -> const std::string* {
        auto it = kv.find(k);
        if (it == kv.end()) return nullptr;
        seen.insert(k);
        return &it->second;
    };
    auto num = [&](const std::string& k, double& dst) {
        if (auto v = get(k)) dst = to_double(k, *v);
    };
    auto integer = [&](const std::string& k, auto& dst) {
        if (auto v = get(k)) dst = static_cast<std::remove_reference_t<decltype(dst)>>(to_int(k, *v));
    };
    auto flag = [&](const std::string& k, bool& dst) {
        if (auto v = get(k)) dst = to_bool(k, *v);
    };
    auto opt_num = [&](const std::string& k, std::optional<double>& dst) {
        if (auto v = get(k)) {
            if (*v == "auto")
                dst.reset();
            else
                dst = to_double(k, *v);
        }
    };
    auto opt_int = [&](const std::string& k, std::optional<int>& dst) {
        if (auto v = get(k)) {
            if (*v == "auto")
                dst.reset();
            else
                dst = static_cast<int>(to_int(k, *v));
        }
    };

    if (auto v = get("mode")) c.mode = parse_mode(*v);
    if (auto v = get("spectrum.source")) {
        if (*v == "inline") c.source = SpectrumSource::inline_list;
        else if (*v == "random") c.source = SpectrumSource::random;
        else if (*v == "clustered") c.source = SpectrumSource::clustered;
        else if (*v == "file") c.source = SpectrumSource::file;
        else throw Error("config field 'spectrum.source': unknown source " + *v);
    }
    if (auto v = get("spectrum.positions")) c.positions = to_doubles("spectrum.positions", *v);
    if (auto v = get("spectrum.amplitudes")) c.amplitudes = to_doubles("spectrum.amplitudes", *v);
    if (auto v = get("spectrum.file")) c.spectrum_file = *v;
    num("random.lo", c.random_lo);
    num("random.hi", c.random_hi);
    num("random.sep_min", c.sep_min);
    num("random.sep_max", c.sep_max);
    integer("cluster.count", c.cluster_count);
    integer("cluster.size", c.cluster_size);
    num("cluster.spacing", c.cluster_spacing);
    num("cluster.gap", c.cluster_gap);
    flag("cluster.random_offset", c.random_offset);
    num("measure.omega", c.omega);
    num("measure.step", c.step);
    num("measure.sigma", c.sigma);
    if (auto v = get("measure.seed")) c.seed = static_cast<std::uint64_t>(std::stoull(*v));
    num("measure.tau", c.tau);
    if (auto v = get("measure.noise")) {
        if (*v == "disk") c.noise = NoiseKind::disk;
        else if (*v == "gaussian") c.noise = NoiseKind::clipped_gaussian;
        else throw Error("config field 'measure.noise': expected disk or gaussian");
    }
    num("scan.lambda", c.window.lambda);
    num("scan.gamma", c.window.gamma);
    num("scan.trust_level", c.window.trust_level);
    num("scan.essential_level", c.window.essential_level);
    opt_num("scan.r1", c.r1);
    opt_num("scan.r2", c.r2);
    num("scan.margin", c.sweep_margin);
    opt_int("scan.subsample", c.subsample);
    opt_num("scan.density", c.density);
    opt_num("scan.merge_radius", c.merge_radius);
    opt_int("music.source_count", c.source_count);
    opt_num("music.sv_ratio", c.sv_ratio);
    num("music.grid_density", c.grid_density);
    num("music.peak_floor", c.peak_floor);
    integer("clustered.nearest_order", c.nearest_order);
    integer("clustered.other_order", c.other_order);
    if (auto v = get("clustered.centers")) {
        if (*v == "known") c.known_centers = true;
        else if (*v == "detect") c.known_centers = false;
        else throw Error("config field 'clustered.centers': expected known or detect");
    }
    if (auto v = get("clustered.counts")) {
        if (*v == "known") c.known_counts = true;
        else if (*v == "unknown") c.known_counts = false;
        else throw Error("config field 'clustered.counts': expected known or unknown");
    }
    opt_num("clustered.detect_lambda", c.detect_lambda);
    if (auto v = get("bench.ranges")) c.bench_ranges = to_doubles("bench.ranges", *v);
    if (auto v = get("bench.algos")) c.bench_algos = words(*v);
    num("bench.step_factor", c.bench_step_factor);
    integer("run.repetitions", c.repetitions);
    if (auto v = get("run.output")) c.output = *v;

    for (const auto& [k, v] : kv)
        if (!seen.count(k)) throw Error("config field '" + k + "': unknown key");
    for (const auto& a : c.bench_algos)
        if (a != "music" && a != "scan" && a != "scanc")
            throw Error("config field 'bench.algos': unknown algorithm " + a);
    if (c.repetitions < 1) throw Error("config field 'run.repetitions': must be >= 1");
    return c;
}

KeyValues to_key_values(const ExperimentConfig& c) {
    KeyValues kv;
    auto opt = [](const auto& o) {
        if (!o) return std::string("auto");
        if constexpr (std::is_same_v<std::decay_t<decltype(*o)>, double>)
            return fmt(*o);
        else
            return std::to_string(*o);
    };
    kv["mode"] = mode_name(c.mode);
    kv["spectrum.source"] = source_name(c.source);
    if (!c.positions.empty()) kv["spectrum.positions"] = join(c.positions);
    if (!c.amplitudes.empty()) kv["spectrum.amplitudes"] = join(c.amplitudes);
    if (!c.spectrum_file.empty()) kv["spectrum.file"] = c.spectrum_file;
    kv["random.lo"] = fmt(c.random_lo);
    kv["random.hi"] = fmt(c.random_hi);
    kv["random.sep_min"] = fmt(c.sep_min);
    kv["random.sep_max"] = fmt(c.sep_max);
    kv["cluster.count"] = std::to_string(c.cluster_count);
    kv["cluster.size"] = std::to_string(c.cluster_size);
    kv["cluster.spacing"] = fmt(c.cluster_spacing);
    kv["cluster.gap"] = fmt(c.cluster_gap);
    kv["cluster.random_offset"] = c.random_offset ? "true" : "false";
    kv["measure.omega"] = fmt(c.omega);
    kv["measure.step"] = fmt(c.step);
    kv["measure.sigma"] = fmt(c.sigma);
    kv["measure.seed"] = std::to_string(c.seed);
    kv["measure.tau"] = fmt(c.tau);
    kv["measure.noise"] = c.noise == NoiseKind::disk ? "disk" : "gaussian";
    kv["scan.lambda"] = fmt(c.window.lambda);
    kv["scan.gamma"] = fmt(c.window.gamma);
    kv["scan.trust_level"] = fmt(c.window.trust_level);
    kv["scan.essential_level"] = fmt(c.window.essential_level);
    kv["scan.r1"] = opt(c.r1);
    kv["scan.r2"] = opt(c.r2);
    kv["scan.margin"] = fmt(c.sweep_margin);
    kv["scan.subsample"] = opt(c.subsample);
    kv["scan.density"] = opt(c.density);
    kv["scan.merge_radius"] = opt(c.merge_radius);
    kv["music.source_count"] = opt(c.source_count);
    kv["music.sv_ratio"] = opt(c.sv_ratio);
    kv["music.grid_density"] = fmt(c.grid_density);
    kv["music.peak_floor"] = fmt(c.peak_floor);
    kv["clustered.nearest_order"] = std::to_string(c.nearest_order);
    kv["clustered.other_order"] = std::to_string(c.other_order);
    kv["clustered.centers"] = c.known_centers ? "known" : "detect";
    kv["clustered.counts"] = c.known_counts ? "known" : "unknown";
    kv["clustered.detect_lambda"] = opt(c.detect_lambda);
    kv["bench.ranges"] = join(c.bench_ranges);
    kv["bench.algos"] = join(c.bench_algos);
    kv["bench.step_factor"] = fmt(c.bench_step_factor);
    kv["run.repetitions"] = std::to_string(c.repetitions);
    if (!c.output.empty()) kv["run.output"] = c.output;
    return kv;
}

ExperimentConfig parse_config(const std::string& text) { return from_key_values(parse_key_values(text)); }

std::string serialize_config(const ExperimentConfig& config) {
    return format_key_values(to_key_values(config));
}

namespace {
std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}
}  // namespace

ExperimentConfig load_config(const std::string& path) { return parse_config(read_file(path)); }

DiscreteSpectrum parse_spectrum(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<std::pair<double, cplx>> rows;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (trim(line).empty()) continue;
        std::istringstream ls(line);
        double y, re, im;
        if (!(ls >> y >> re >> im))
            throw Error("spectrum line " + std::to_string(lineno) + ": expected 'y re im'");
        rows.emplace_back(y, cplx(re, im));
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> p;
    CVec a;
    for (auto& [y, v] : rows) {
        p.push_back(y);
        a.push_back(v);
    }
    return DiscreteSpectrum(std::move(p), std::move(a));
}

DiscreteSpectrum load_spectrum(const std::string& path) { return parse_spectrum(read_file(path)); }

std::string format_spectrum(const DiscreteSpectrum& s) {
    std::string out = "# y re(a) im(a)\n";
    for (std::size_t j = 0; j < s.size(); ++j)
        out += fmt(s.positions()[j]) + " " + fmt(s.amplitudes()[j].real()) + " " +
               fmt(s.amplitudes()[j].imag()) + "\n";
    return out;
}

}  // namespace specscan::harness
