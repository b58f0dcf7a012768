#pragma once

// Elementary number-theoretic kernels: reduced residues, multiplicative
// functions, the weight rho(q, lambda), Ramanujan sums and one-dimensional
// quadratic Gauss sums.  All moduli in scope are small (<= 1e4), so plain
// trial division is used throughout.

#include <vector>

#include "lacsph/common.hpp"

namespace lacsph::arith {

// A residue class value mod q, always stored reduced to [0, q).
struct Residue {
    long long value = 0;
    long long modulus = 1;

    static Residue reduce(long long v, long long q);
};

// Reduced residues a in [0, q) with gcd(a, q) = 1, ascending.
// units(1) = {0}: the single residue class, with trivial character value 1.
std::vector<long long> units(long long q);

long long euler_phi(long long n);
int moebius(long long n);
std::vector<long long> divisors(long long n);

// rho(q, lambda) = gcd(q1, lambda) * 2^r where q = q1 * 2^r with q1 odd.
long long rho_weight(long long q, long long lambda);

// Ramanujan sum c_q(n) = sum over a in U_q of e(a n / q), via the closed form
// mu(q/g) * phi(q) / phi(q/g) with g = gcd(q, n).  Integer-valued.
long long ramanujan_sum(long long q, long long n);

// g(a, b; q) = sum_{x=0}^{q-1} e((a x^2 + b x)/q), by direct summation.
cplx gauss_sum(long long a, long long b, long long q);
cplx gauss_sum(const Residue& a, const Residue& b, long long q);

}  // namespace lacsph::arith
