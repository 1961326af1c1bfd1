#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "specscan/harness/checks.hpp"
#include "specscan/harness/config.hpp"
#include "specscan/harness/experiment.hpp"

using namespace specscan::harness;

namespace {

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<int> reps;
    bool quiet = false;
};

std::string csv_path_for(const std::string& out) {
    const auto dot = out.rfind('.');
    const auto slash = out.rfind('/');
    const bool has_ext = dot != std::string::npos && (slash == std::string::npos || dot > slash);
    return (has_ext ? out.substr(0, dot) : out) + ".csv";
}

int run_mode(Mode mode, const Options& o) {
    if (mode == Mode::check) {
        const auto rows = run_checks();
        bool ok = true;
        for (const auto& r : rows) ok = ok && r.passed;
        if (!o.quiet || !ok) std::cout << format_checks(rows);
        std::cout << (ok ? "all checks passed" : "some checks failed") << "\n";
        return ok ? 0 : 1;
    }
    ExperimentConfig cfg = o.config.empty() ? ExperimentConfig{} : load_config(o.config);
    cfg.mode = mode;
    if (o.seed) cfg.seed = *o.seed;
    if (o.reps) cfg.repetitions = *o.reps;
    if (!o.out.empty()) cfg.output = o.out;
    from_key_values(to_key_values(cfg));  // validates overrides

    const auto outcome = run(cfg);
    if (!cfg.output.empty()) {
        std::ofstream jsonl(cfg.output), csv(csv_path_for(cfg.output));
        if (!jsonl || !csv) throw specscan::Error("cannot write " + cfg.output);
        write_outputs(outcome, jsonl, csv);
        if (!o.quiet) std::cout << format_csv(outcome.summary);
    } else if (o.quiet) {
        std::cout << format_csv(outcome.summary);
    } else {
        write_outputs(outcome, std::cout, std::cout);
    }
    for (const auto& r : outcome.records)
        if (!r.error.empty()) std::cerr << "trial " << r.trial << " (" << r.algo << "): " << r.error << "\n";
    return outcome.status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Line spectral estimation by windowed subspace scanning"};
    app.require_subcommand(1);
    Options opts;
    int status = 0;
    for (Mode mode : {Mode::synth, Mode::music, Mode::scan, Mode::scanc, Mode::detect, Mode::bench,
                      Mode::check}) {
        auto* sub = app.add_subcommand(mode_name(mode));
        sub->add_option("--config", opts.config, "key = value configuration file");
        sub->add_option("--seed", opts.seed, "base seed");
        sub->add_option("--out", opts.out, "JSON-lines output path (CSV written alongside)");
        sub->add_option("--reps", opts.reps, "number of trials");
        sub->add_flag("--quiet", opts.quiet, "print only the summary");
        sub->callback([mode, &opts, &status] {
            try {
                status = run_mode(mode, opts);
            } catch (const std::exception& e) {
                std::cerr << "error: " << e.what() << "\n";
                status = 2;
            }
        });
    }
    CLI11_PARSE(app, argc, argv);
    return status;
}
