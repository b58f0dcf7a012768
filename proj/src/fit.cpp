#include "lacsph/fit.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lacsph::harness {

FitResult fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw std::invalid_argument("fit_slope: length mismatch");
    if (x.size() < 3) throw std::invalid_argument("fit_slope: need at least 3 points");
    std::vector<double> lx(x.size()), ly(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 0.0 || y[i] <= 0.0)
            throw std::invalid_argument("fit_slope: data must be strictly positive");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += lx[i], my += ly[i];
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_slope: degenerate abscissa");
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        rss += r * r;
    }
    fit.residual = std::sqrt(rss / n);
    return fit;
}

}  // namespace lacsph::harness
