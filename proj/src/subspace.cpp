#include "specscan/subspace.hpp"

#include <algorithm>
#include <complex>
#include <cmath>
#include <numeric>
#include <string>

#include "specscan/kernels.hpp"

#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace specscan {

Eigen::MatrixXcd hankel(const CVec& samples) {
    const int m = static_cast<int>(samples.size());
    if (m < 3) throw Error("hankel matrix needs at least 3 samples");
    const int p = (m + 2) / 2;  // ceil((m+1)/2)
    const int q = m + 1 - p;
    Eigen::MatrixXcd H(p, q);
    for (int r = 0; r < p; ++r)
        for (int c = 0; c < q; ++c) H(r, c) = samples[r + c];
    return H;
}

int estimate_rank(const std::vector<double>& singular_values, double ratio) {
    if (singular_values.empty() || !(singular_values.front() > 0.0)) return 0;
    const double thr = ratio * singular_values.front();
    return static_cast<int>(std::count_if(singular_values.begin(), singular_values.end(),
                                          [&](double s) { return s >= thr; }));
}

double default_rank_ratio(const std::vector<double>& sv) {
    if (sv.empty() || !(sv.front() > 0.0)) return 1e-6;
    std::vector<double> tail(sv.begin() + static_cast<std::ptrdiff_t>(sv.size() / 2), sv.end());
    std::sort(tail.begin(), tail.end());
    const std::size_t n = tail.size();
    const double med = n % 2 ? tail[n / 2] : 0.5 * (tail[n / 2 - 1] + tail[n / 2]);
    return std::max(10.0 * med / sv.front(), 1e-6);
}

namespace {

// Singular values and the full p x p left factor, by divide and conquer (zgesdd).
void left_svd(const Eigen::MatrixXcd& H, std::vector<double>& sv, Eigen::MatrixXcd& U) {
    const auto p = static_cast<lapack_int>(H.rows());
    const auto q = static_cast<lapack_int>(H.cols());
    Eigen::MatrixXcd A = H;
    const char job = p <= q ? 'S' : 'A';
    U.resize(p, p);
    Eigen::MatrixXcd VT(job == 'S' ? std::min(p, q) : q, q);
    sv.assign(static_cast<std::size_t>(std::min(p, q)), 0.0);
    const lapack_int info =
        LAPACKE_zgesdd(LAPACK_COL_MAJOR, job, p, q, A.data(), p, sv.data(), U.data(), p,
                       VT.data(), static_cast<lapack_int>(VT.rows()));
    if (info != 0) throw Error("SVD failed to converge (zgesdd info " + std::to_string(info) + ")");
}

struct Functional {
    Eigen::MatrixXcd basis;
    bool complement;
    int p;
    double step;
    Exec exec;

    std::vector<double> on_grid(double x0, double dx, std::size_t count) const {
        auto den = kernels::noise_projection(basis, complement, p, step, x0, dx, count, exec);
        std::vector<double> J(count);
        const double floor = static_cast<double>(p) * 1e-300;
        for (std::size_t i = 0; i < count; ++i) J[i] = std::sqrt(p / std::max(den[i], floor));
        return J;
    }
    double at(double x) const { return on_grid(x, 0.0, 1)[0]; }
};

}  // namespace

MusicResult music(const CVec& samples, double step, const MusicConfig& config) {
    if (!(config.grid_density >= 1.0)) throw Error("grid density must be >= 1");
    if (!(config.peak_floor > 0.0 && config.peak_floor < 1.0))
        throw Error("peak floor must lie in (0,1)");
    if (!(config.x_hi > config.x_lo)) throw Error("search interval is empty");
    if (config.source_count && static_cast<int>(samples.size()) < 2 * *config.source_count + 1)
        throw Error("music needs at least 2n+1 samples for n sources");

    MusicResult res;
    const Eigen::MatrixXcd H = hankel(samples);
    const int p = static_cast<int>(H.rows());
    Eigen::MatrixXcd U;
    left_svd(H, res.singular_values, U);
    const double dx = 1.0 / config.grid_density;
    res.grid_start = config.x_lo;
    res.grid_step = dx;

    if (res.singular_values.front() < 1e-14) {
        res.no_signal = true;
        return res;
    }

    int r;
    if (config.source_count) {
        r = *config.source_count;
        if (r < 0) throw Error("source count must be nonnegative");
        if (r >= p) throw Error("signal rank must be below the Hankel row count (subspace degenerate)");
    } else {
        r = estimate_rank(res.singular_values,
                          config.sv_ratio_threshold.value_or(default_rank_ratio(res.singular_values)));
        if (config.noise_bound) {
            // ||H_noise||_2 <= sqrt(p q) max|w|: anything below is indistinguishable from noise.
            const double floor = std::sqrt(static_cast<double>(p) * static_cast<double>(H.cols())) *
                                 *config.noise_bound;
            int above = 0;
            for (double s : res.singular_values) above += s > floor;
            r = std::min(r, above);
        }
        if (config.rank_cap) r = std::min(r, *config.rank_cap);
        r = std::min(r, p - 1);
    }
    res.rank = r;

    // Project on whichever side of the split is narrower; both give the same J.
    Functional fn;
    fn.complement = r <= p - r;
    fn.basis = fn.complement ? Eigen::MatrixXcd(U.leftCols(r))
                             : Eigen::MatrixXcd(U.rightCols(p - r));
    fn.p = p;
    fn.step = step;
    fn.exec = config.exec;

    const std::size_t count =
        static_cast<std::size_t>(std::ceil((config.x_hi - config.x_lo) / dx - 1e-9));
    // One guard point on each side so maxima at the interval edges are detectable.
    auto ext = fn.on_grid(config.x_lo - dx, dx, count + 2);
    res.functional.assign(ext.begin() + 1, ext.end() - 1);
    if (r == 0) return res;

    struct Peak {
        double x;
        double J;
    };
    std::vector<Peak> peaks;
    for (std::size_t i = 1; i + 1 < ext.size(); ++i) {
        if (!(ext[i] >= ext[i - 1] && ext[i] > ext[i + 1])) continue;
        double x = config.x_lo + (static_cast<double>(i) - 1.0) * dx;
        double best = ext[i];
        double d = dx;
        for (int step3 = 0; step3 < 3; ++step3) {
            const double sub = d / 3.0;
            auto vals = fn.on_grid(x - 3.0 * sub, sub, 7);
            const auto it = std::max_element(vals.begin(), vals.end());
            if (*it > best) {
                best = *it;
                x = x - 3.0 * sub + static_cast<double>(it - vals.begin()) * sub;
            }
            d = sub;
        }
        if (x >= config.x_lo && x < config.x_hi) peaks.push_back({x, best});
    }

    if (config.source_count) {
        std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.J > b.J; });
        if (peaks.size() > static_cast<std::size_t>(r)) peaks.resize(r);
    } else if (!peaks.empty()) {
        double top = 0.0;
        for (const auto& pk : peaks) top = std::max(top, pk.J);
        std::erase_if(peaks, [&](const Peak& pk) { return pk.J < config.peak_floor * top; });
    }
    for (const auto& pk : peaks) res.estimates.push_back(pk.x);
    std::sort(res.estimates.begin(), res.estimates.end());
    return res;
}

}  // namespace specscan
