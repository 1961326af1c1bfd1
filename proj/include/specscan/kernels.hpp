#pragma once

#include <Eigen/Dense>

#include "specscan/common.hpp"

namespace specscan::kernels {

// out[l] = sum_{j=0}^{|g|-1} x[l + |g| - 1 - j] * g[j],  l = 0 .. |x| - |g|.
// With a symmetric odd-length kernel this is the centred "valid" convolution.
CVec convolve_valid(const CVec& x, const std::vector<double>& g, Exec exec = Exec::parallel);
CVec convolve_valid_fft(const CVec& x, const std::vector<double>& g);

// Full linear convolution of two complex sequences.
CVec convolve_full(const CVec& a, const CVec& b);

// Squared noise-space projection of the steering vector phi(x)_k = exp(i x k step),
// k = 0..p-1, for x = x0 + i dx, i = 0..count-1.  `basis` spans either the
// signal space (complement = true -> p - |B^H phi|^2) or the noise space
// (complement = false -> |B^H phi|^2).
std::vector<double> noise_projection(const Eigen::MatrixXcd& basis, bool complement, int p,
                                     double step, double x0, double dx, std::size_t count,
                                     Exec exec = Exec::parallel);

}  // namespace specscan::kernels
