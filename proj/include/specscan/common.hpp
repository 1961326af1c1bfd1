#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace specscan {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = std::numbers::pi;

// Raised whenever a precondition of a public operation is violated.
class Error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Execution policy for the data-parallel kernels. `serial` is the reference path.
enum class Exec { serial, parallel };

}  // namespace specscan
