#include "lacsph/bessel.hpp"

#include <cmath>
#include <stdexcept>

namespace lacsph::bessel {

namespace {

constexpr double kPi = 3.14159265358979323846264338328;
constexpr double kSeriesCutoff = 12.0;

// Ascending series J_nu(z) = (z/2)^nu sum_k (-z^2/4)^k / (k! Gamma(k+nu+1)).
// Alternating with ~I_nu(12) worst-case cancellation, fine in double below
// the cutoff.
double j_series(double nu, double z) {
    double zz = -0.25 * z * z;
    double term = std::pow(0.5 * z, nu) / std::tgamma(nu + 1.0);
    double acc = term;
    for (int k = 1; k <= 80; ++k) {
        term *= zz / (k * (k + nu));
        acc += term;
        if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
    }
    return acc;
}

// Hankel asymptotic expansion for large z (A&S 9.2.5):
//   J_nu(z) = sqrt(2/(pi z)) [P cos(chi) - Q sin(chi)],  chi = z - (nu/2 + 1/4) pi
// with Hankel coefficients a_{k+1} = a_k (4 nu^2 - (2k+1)^2) / (8 (k+1)).
// Truncated at the smallest term; error below 1e-10 for z >= 12, nu <= 3.
double j_asymptotic(double nu, double z) {
    double mu = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double a = 1.0;
    double prev = 1.0;
    for (int k = 0; k < 24; ++k) {
        a *= (mu - (2.0 * k + 1.0) * (2.0 * k + 1.0)) / (8.0 * (k + 1.0)) / z;
        if (std::abs(a) >= prev) break;  // asymptotic series started diverging
        prev = std::abs(a);
        int sign = ((k + 1) / 2) % 2 == 0 ? 1 : -1;
        if ((k + 1) % 2 == 1)
            q += sign * a;
        else
            p += sign * a;
    }
    double chi = z - (0.5 * nu + 0.25) * kPi;
    return std::sqrt(2.0 / (kPi * z)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double bessel_j_half(int twice_nu, double z) {
    if (twice_nu < 0 || twice_nu > 6) throw std::invalid_argument("bessel_j_half: order out of range");
    if (z < 0) throw std::invalid_argument("bessel_j_half: requires z >= 0");
    double nu = 0.5 * twice_nu;
    if (twice_nu % 2 == 1) {
        // closed forms; series guard near 0 where the 1/z powers cancel
        if (z < 0.5) return j_series(nu, z);
        double f = std::sqrt(2.0 / (kPi * z));
        double s = std::sin(z), c = std::cos(z);
        switch (twice_nu) {
            case 1: return f * s;
            case 3: return f * (s / z - c);
            case 5: return f * ((3.0 / (z * z) - 1.0) * s - 3.0 * c / z);
        }
    }
    if (z <= kSeriesCutoff) return j_series(nu, z);
    return j_asymptotic(nu, z);
}

double radial_profile(int d, double t) {
    if (d < 2 || d > 8) throw std::invalid_argument("radial_profile: dimension out of range");
    if (t < 0) t = -t;
    if (t == 0.0) return 1.0;
    int twice_nu = d - 2;
    double nu = 0.5 * twice_nu;
    if (twice_nu % 2 == 1) {
        // half-integer orders: Lambda_{n+1/2}(t) = (2n+1)!! j_n(t) / t^n
        if (t < 0.5) {
            // normalized series, exact 1 at t = 0
            double zz = -0.25 * t * t;
            double term = 1.0, acc = 1.0;
            for (int k = 1; k <= 40; ++k) {
                term *= zz / (k * (k + nu));
                acc += term;
                if (std::abs(term) < 1e-18) break;
            }
            return acc;
        }
        double s = std::sin(t), c = std::cos(t);
        switch (d) {
            case 3: return s / t;
            case 5: return 3.0 * (s - t * c) / (t * t * t);
            case 7: return 15.0 * ((3.0 - t * t) * s - 3.0 * t * c) / (t * t * t * t * t);
        }
    }
    if (t <= kSeriesCutoff) {
        double zz = -0.25 * t * t;
        double term = 1.0, acc = 1.0;
        for (int k = 1; k <= 80; ++k) {
            term *= zz / (k * (k + nu));
            acc += term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(acc))) break;
        }
        return acc;
    }
    return std::tgamma(nu + 1.0) * std::pow(0.5 * t, -nu) * j_asymptotic(nu, t);
}

}  // namespace lacsph::bessel
