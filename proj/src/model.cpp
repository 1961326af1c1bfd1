#include "specscan/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace specscan {

DiscreteSpectrum::DiscreteSpectrum(std::vector<double> positions, CVec amplitudes)
    : positions_(std::move(positions)), amplitudes_(std::move(amplitudes)) {
    if (positions_.empty()) throw Error("spectrum needs at least one component");
    if (positions_.size() != amplitudes_.size())
        throw Error("spectrum positions and amplitudes differ in length");
    for (std::size_t j = 0; j < positions_.size(); ++j) {
        if (!std::isfinite(positions_[j])) throw Error("spectrum position is not finite");
        if (std::abs(amplitudes_[j]) == 0.0) throw Error("spectrum amplitude must be nonzero");
        if (j > 0 && !(positions_[j] > positions_[j - 1]))
            throw Error("spectrum positions must be strictly increasing");
    }
}

DiscreteSpectrum::DiscreteSpectrum(std::vector<double> positions)
    : DiscreteSpectrum(positions, CVec(positions.size(), cplx(1.0, 0.0))) {}

double DiscreteSpectrum::m_min() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& a : amplitudes_) m = std::min(m, std::abs(a));
    return m;
}

double DiscreteSpectrum::d_min() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < positions_.size(); ++j)
        d = std::min(d, positions_[j] - positions_[j - 1]);
    return d;
}

double DiscreteSpectrum::tv_norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::abs(a);
    return s;
}

double DiscreteSpectrum::support_radius() const {
    return std::max(std::abs(positions_.front()), std::abs(positions_.back()));
}

DiscreteSpectrum DiscreteSpectrum::shifted(double c) const {
    auto p = positions_;
    for (auto& y : p) y += c;
    return DiscreteSpectrum(std::move(p), amplitudes_);
}

DiscreteSpectrum DiscreteSpectrum::merged(const DiscreteSpectrum& other) const {
    std::vector<std::pair<double, cplx>> all;
    for (std::size_t j = 0; j < size(); ++j) all.emplace_back(positions_[j], amplitudes_[j]);
    for (std::size_t j = 0; j < other.size(); ++j)
        all.emplace_back(other.positions_[j], other.amplitudes_[j]);
    std::sort(all.begin(), all.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<double> p;
    CVec a;
    for (auto& [y, amp] : all) {
        p.push_back(y);
        a.push_back(amp);
    }
    return DiscreteSpectrum(std::move(p), std::move(a));
}

Rng::Rng(std::uint64_t seed) : engine_(seed) {}

std::uint64_t Rng::next_u64() { return engine_(); }

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    double u1 = uniform();
    while (u1 == 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

namespace {

int sample_half_count(double omega, double step) {
    if (!(omega > 0.0) || !(step > 0.0)) throw Error("omega and step must be positive");
    const double ratio = omega / step;
    const double K = std::round(ratio);
    if (K < 1.0 || std::abs(ratio - K) > 1e-6 * std::max(1.0, K))
        throw Error("omega/step must be a positive integer (got " + std::to_string(ratio) + ")");
    return static_cast<int>(K);
}

}  // namespace

CVec noiseless_samples(const DiscreteSpectrum& spectrum, double omega, double step) {
    const int K = sample_half_count(omega, step);
    CVec out(2 * K + 1, cplx(0.0, 0.0));
    // e^{i y k h} by rotation, re-anchored every kAnchor samples so the rounding
    // drift stays at a few ulps; negative k use the conjugate phase.
    constexpr int kAnchor = 32;
    for (std::size_t j = 0; j < spectrum.size(); ++j) {
        const double y = spectrum.positions()[j];
        const cplx a = spectrum.amplitudes()[j];
        const cplx rot = std::polar(1.0, y * step);
        cplx z(1.0, 0.0);
        for (int k = 0; k <= K; ++k) {
            if (k % kAnchor == 0) z = std::polar(1.0, y * (k * step));
            out[K + k] += a * z;
            if (k > 0) out[K - k] += a * std::conj(z);
            z *= rot;
        }
    }
    return out;
}

SampledMeasurement synthesize(const DiscreteSpectrum& spectrum, double omega, double step,
                              double noise_level, std::uint64_t seed, NoiseKind kind) {
    if (noise_level < 0.0) throw Error("noise level must be nonnegative");
    const double R = spectrum.support_radius();
    if (R > 0.0 && step > kPi / R * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "Nyquist violation: step " << step << " exceeds the maximum admissible step pi/R = "
            << kPi / R;
        throw Error(msg.str());
    }
    SampledMeasurement m;
    m.samples = noiseless_samples(spectrum, omega, step);
    m.omega = omega;
    m.step = step;
    m.noise_level = noise_level;
    m.seed = seed;
    if (noise_level > 0.0) {
        Rng rng(seed);
        for (auto& s : m.samples) {
            cplx w;
            if (kind == NoiseKind::disk) {
                const double r = noise_level * std::sqrt(rng.uniform());
                w = std::polar(r, 2.0 * kPi * rng.uniform());
            } else {
                do {
                    w = cplx(rng.normal(), rng.normal()) * (noise_level / 3.0);
                } while (!(std::abs(w) < noise_level));
            }
            s += w;
        }
    }
    return m;
}

double density(std::size_t n, double support_halfwidth, double omega) {
    if (n == 0 || !(support_halfwidth > 0.0) || !(omega > 0.0))
        throw Error("density requires n >= 1, positive support halfwidth and omega");
    return (static_cast<double>(n) / (2.0 * support_halfwidth)) * (kPi / omega);
}

double density(const DiscreteSpectrum& spectrum, double support_halfwidth, double omega) {
    if (support_halfwidth < spectrum.support_radius())
        throw Error("support halfwidth smaller than the spectrum support");
    return density(spectrum.size(), support_halfwidth, omega);
}

std::size_t EstimateReport::matched() const {
    std::size_t c = 0;
    for (double e : matched_error) c += std::isnan(e) ? 0 : 1;
    return c;
}

double EstimateReport::max_matched_error() const {
    double m = 0.0;
    for (double e : matched_error)
        if (!std::isnan(e)) m = std::max(m, e);
    return m;
}

double EstimateReport::median_matched_error() const {
    std::vector<double> v;
    for (double e : matched_error)
        if (!std::isnan(e)) v.push_back(e);
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

EstimateReport match_and_score(const DiscreteSpectrum& truth, std::vector<double> estimates,
                               double omega, std::optional<double> radius) {
    EstimateReport r;
    std::sort(estimates.begin(), estimates.end());
    r.estimates = std::move(estimates);
    const double rad = radius.value_or(kPi / (2.0 * omega));
    const auto& y = truth.positions();
    std::vector<bool> used(r.estimates.size(), false);
    r.matched_error.assign(y.size(), std::numeric_limits<double>::quiet_NaN());
    double ss = 0.0;
    std::size_t matched = 0;
    for (std::size_t j = 0; j < y.size(); ++j) {
        std::size_t best = r.estimates.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < r.estimates.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(r.estimates[i] - y[j]);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        if (best < r.estimates.size() && bd < rad) {
            used[best] = true;
            r.matched_error[j] = bd;
            ss += bd * bd;
            ++matched;
        }
    }
    r.missed = y.size() - matched;
    r.spurious = r.estimates.size() - matched;
    r.rms_error = matched ? std::sqrt(ss / static_cast<double>(matched)) : 0.0;
    return r;
}

void score(EstimateReport& report, const DiscreteSpectrum& truth, double omega,
           std::optional<double> radius) {
    auto scored = match_and_score(truth, report.estimates, omega, radius);
    scored.timings = std::move(report.timings);
    scored.warnings = std::move(report.warnings);
    report = std::move(scored);
}

}  // namespace specscan
