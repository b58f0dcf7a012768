#pragma once

// Kloosterman-type exponential sums
//   K(lambda, q, l) = q^{-d} sum_{a in U_q} sum_{x in Z_q^d} e((-lambda a + a|x|^2 + l.x)/q)
// with a brute-force double-sum evaluator, a Gauss-sum-factored evaluator,
// sup-over-l estimation, the q-sum of the Kloosterman lemma and the
// rho-weighted comparison sums.

#include <cstdint>
#include <span>
#include <vector>

#include "lacsph/common.hpp"

namespace lacsph::expsum {

struct KloostermanParams {
    int dim = 4;
    long long lambda = 1;
    long long q = 1;
    std::vector<long long> l;  // d components, reduced mod q on use
};

// Direct double summation over U_q x Z_q^d.  Work budget q^d * phi(q) <= 1e8.
cplx kloosterman_bruteforce(const KloostermanParams& p);

// Same value through the coordinate factorization
//   K = q^{-d} sum_{a in U_q} e(-lambda a/q) prod_i g(a, l_i; q),
// cost O(phi(q) * q * d) uncached, O(phi(q) * d) against the Gauss table cache.
cplx kloosterman_factored(const KloostermanParams& p);
cplx kloosterman_factored(int d, long long lambda, long long q, std::span<const long long> l);

struct SupEstimate {
    double value = 0.0;   // max |K| over the l set examined
    bool exact = false;   // true when all q^d vectors l were enumerated
    long long points = 0; // number of l vectors examined
};

// Max of |K(lambda, q, l)| over l: exact enumeration when q^d <= 1e6,
// otherwise a seeded sample of l_samples vectors plus l = 0 (a lower bound
// on the true sup in that regime).  Requires q <= 200.
SupEstimate kloosterman_sup(int d, long long lambda, long long q, int l_samples,
                            std::uint64_t seed);

enum class LStrategy { Zero, RandomPerQ };

// sum_{q <= floor(sqrt(lambda))} |K(lambda, q, l_q)| with l_q fixed by the
// strategy.  Requires lambda <= 1e4.
double kloosterman_q_sum(int d, long long lambda, LStrategy strategy, std::uint64_t seed);

// sum_{q <= floor(sqrt(lambda))} q^beta * rho(q, lambda)^{1/2}.  lambda <= 1e6.
double rho_weighted_sum(double beta, long long lambda);

// Partial singular series Z(d, lambda) = sum_{q <= floor(sqrt(lambda))} K(lambda, q, 0).
// Real by the a <-> q-a symmetry; the imaginary part is discarded after a
// magnitude check.
double partial_singular_series(int d, long long lambda);

// floor(sqrt(n)) on integers.
long long isqrt(long long n);

}  // namespace lacsph::expsum
