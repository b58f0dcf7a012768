#pragma once

// Ordinary least squares on (log x, log y) for decay-exponent sweeps.

#include <span>

namespace lacsph::harness {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // RMS of the log-log residuals
};

// Requires at least 3 points and strictly positive data.
FitResult fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace lacsph::harness
