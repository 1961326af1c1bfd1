#include <benchmark/benchmark.h>

#include <cmath>

#include "specscan/kernels.hpp"
#include "specscan/model.hpp"
#include "specscan/scan.hpp"
#include "specscan/subspace.hpp"
#include "specscan/windowing.hpp"

using namespace specscan;

namespace {

CVec random_signal(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    CVec x(n);
    for (auto& v : x) v = cplx(rng.normal(), rng.normal());
    return x;
}

// Window taps for lambda = 100, h = 1e-3, gamma = 1e-3 unless overridden.
std::vector<double> taps(int Gamma) { return window_weights(100.0, 1e-3, Gamma); }

void convolve(benchmark::State& state, Exec exec) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto x = random_signal(n, 1);
    const auto g = taps(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_valid(x, g, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>((n - g.size() + 1) * g.size()));
}

void BM_convolve_serial(benchmark::State& s) { convolve(s, Exec::serial); }
void BM_convolve_parallel(benchmark::State& s) { convolve(s, Exec::parallel); }

void BM_convolve_fft(benchmark::State& state) {
    const auto x = random_signal(static_cast<std::size_t>(state.range(0)), 1);
    const auto g = taps(static_cast<int>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(kernels::convolve_valid_fft(x, g));
}

void projection(benchmark::State& state, Exec exec) {
    const int p = static_cast<int>(state.range(0));
    const auto count = static_cast<std::size_t>(state.range(1));
    const Eigen::MatrixXcd basis = Eigen::MatrixXcd::Random(p, 8).householderQr().householderQ() *
                                   Eigen::MatrixXcd::Identity(p, 8);
    for (auto _ : state)
        benchmark::DoNotOptimize(kernels::noise_projection(basis, true, p, 0.01, -10.0, 0.01, count, exec));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(count));
}

void BM_projection_serial(benchmark::State& s) { projection(s, Exec::serial); }
void BM_projection_parallel(benchmark::State& s) { projection(s, Exec::parallel); }

// Random spectrum on [0, R], h = 3/R, sigma = 1e-2: whole-band MUSIC against the sweep.
struct Instance {
    DiscreteSpectrum truth;
    SampledMeasurement m;
    double rho;
};

Instance instance(double R) {
    Rng rng(7);
    std::vector<double> y;
    for (double c = rng.uniform(5.0, 10.0); c < R; c += rng.uniform(5.0, 10.0)) y.push_back(c);
    DiscreteSpectrum truth(y);
    const double h = 1.0 / std::ceil(R / 3.0);
    auto m = synthesize(truth, 1.0, h, 1e-2, 11);
    return {truth, m, density(truth.size(), 0.5 * R, 1.0)};
}

void BM_music(benchmark::State& state) {
    const auto inst = instance(static_cast<double>(state.range(0)));
    MusicConfig mc;
    mc.x_lo = 0.0;
    mc.x_hi = static_cast<double>(state.range(0));
    mc.source_count = static_cast<int>(inst.truth.size());
    for (auto _ : state) benchmark::DoNotOptimize(music(inst.m.samples, inst.m.step, mc));
}

void BM_scan_music(benchmark::State& state) {
    const auto inst = instance(static_cast<double>(state.range(0)));
    ScanConfig sc;
    sc.window.lambda = 170.0;
    sc.window.trust_level = 0.95;
    sc.window.gamma = 1e-2;
    sc.window.essential_level = 1e-2;
    sc.r1 = 0.0;
    sc.r2 = static_cast<double>(state.range(0));
    sc.density_prior = inst.rho;
    for (auto _ : state) benchmark::DoNotOptimize(scan_music(inst.m, sc));
}

}  // namespace

BENCHMARK(BM_convolve_serial)->Args({2001, 314})->Args({20001, 314})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_convolve_parallel)->Args({2001, 314})->Args({20001, 314})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_convolve_fft)->Args({2001, 314})->Args({20001, 314})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_projection_serial)->Args({64, 2000})->Args({256, 20000})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_projection_parallel)->Args({64, 2000})->Args({256, 20000})->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_music)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_scan_music)->Arg(200)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
