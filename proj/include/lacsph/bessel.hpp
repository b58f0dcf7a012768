#pragma once

// Bessel machinery for the radial profile of the sphere surface-measure
// Fourier transform.  Half-integer orders use the closed trigonometric
// forms; integer orders a power series for |z| <= 12 and the standard
// large-argument asymptotic expansion beyond.

namespace lacsph::bessel {

// J_nu(z) for nu = k/2, k = 0..6, z >= 0.
double bessel_j_half(int twice_nu, double z);

// Lambda_nu(t) = Gamma(nu+1) (t/2)^{-nu} J_nu(t), the entire normalization
// with Lambda_nu(0) = 1.  nu = (d-2)/2.
double radial_profile(int d, double t);

}  // namespace lacsph::bessel
