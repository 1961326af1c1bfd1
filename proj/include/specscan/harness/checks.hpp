#pragma once

#include <string>
#include <vector>

namespace specscan::harness {

struct CheckRow {
    std::string name;
    bool passed;
    double value;
    double limit;
};

// Numerical checks of the windowing bounds, Gaussian-tail lemmas, filter
// algebra and sampling formulas on a fixed standard instance.
std::vector<CheckRow> run_checks();

std::string format_checks(const std::vector<CheckRow>& rows);

}  // namespace specscan::harness
