#include "specscan/kernels.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>

namespace specscan::kernels {

CVec convolve_valid(const CVec& x, const std::vector<double>& g, Exec exec) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.size());
    const std::ptrdiff_t m = static_cast<std::ptrdiff_t>(g.size());
    if (m == 0 || n < m) throw Error("valid convolution needs a kernel no longer than the data");
    const std::ptrdiff_t len = n - m + 1;
    CVec out(len);
    auto body = [&](std::ptrdiff_t l) {
        double re = 0.0, im = 0.0;
        const cplx* xs = x.data() + l + m - 1;
        for (std::ptrdiff_t j = 0; j < m; ++j) {
            re += xs[-j].real() * g[j];
            im += xs[-j].imag() * g[j];
        }
        out[l] = cplx(re, im);
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t l = 0; l < len; ++l) body(l);
    } else {
        for (std::ptrdiff_t l = 0; l < len; ++l) body(l);
    }
    return out;
}

CVec convolve_valid_fft(const CVec& x, const std::vector<double>& g) {
    const std::size_t n = x.size(), m = g.size();
    if (m == 0 || n < m) throw Error("valid convolution needs a kernel no longer than the data");
    std::size_t nfft = 1;
    while (nfft < n + m - 1) nfft <<= 1;
    Eigen::FFT<double> fft;
    std::vector<cplx> xa(nfft, 0.0), ga(nfft, 0.0), fx, fg, prod(nfft), full;
    std::copy(x.begin(), x.end(), xa.begin());
    for (std::size_t j = 0; j < m; ++j) ga[j] = g[j];
    fft.fwd(fx, xa);
    fft.fwd(fg, ga);
    for (std::size_t k = 0; k < nfft; ++k) prod[k] = fx[k] * fg[k];
    fft.inv(full, prod);
    return CVec(full.begin() + static_cast<std::ptrdiff_t>(m - 1),
                full.begin() + static_cast<std::ptrdiff_t>(n));
}

CVec convolve_full(const CVec& a, const CVec& b) {
    if (a.empty() || b.empty()) return {};
    CVec out(a.size() + b.size() - 1, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

std::vector<double> noise_projection(const Eigen::MatrixXcd& basis, bool complement, int p,
                                     double step, double x0, double dx, std::size_t count,
                                     Exec exec) {
    std::vector<double> out(count);
    if (count == 0) return out;
    constexpr std::ptrdiff_t kBlock = 256;
    const std::ptrdiff_t nblocks = (static_cast<std::ptrdiff_t>(count) + kBlock - 1) / kBlock;
    const Eigen::MatrixXcd bh = basis.adjoint();
    Eigen::VectorXcd rot(p);
    for (int k = 0; k < p; ++k) rot[k] = std::polar(1.0, k * step * dx);

    auto block = [&](std::ptrdiff_t b) {
        const std::ptrdiff_t first = b * kBlock;
        const std::ptrdiff_t cols = std::min<std::ptrdiff_t>(kBlock, count - first);
        Eigen::MatrixXcd phi(p, cols);
        // Restart the recurrence from an exact phasor at every block.
        const double xs = x0 + static_cast<double>(first) * dx;
        for (int k = 0; k < p; ++k) phi(k, 0) = std::polar(1.0, k * step * xs);
        for (std::ptrdiff_t c = 1; c < cols; ++c) phi.col(c) = phi.col(c - 1).cwiseProduct(rot);
        const Eigen::MatrixXcd proj = bh * phi;
        for (std::ptrdiff_t c = 0; c < cols; ++c) {
            const double s = proj.col(c).squaredNorm();
            out[first + c] = complement ? std::max(static_cast<double>(p) - s, 0.0) : s;
        }
    };
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t b = 0; b < nblocks; ++b) block(b);
    } else {
        for (std::ptrdiff_t b = 0; b < nblocks; ++b) block(b);
    }
    return out;
}

}  // namespace specscan::kernels
