#pragma once

// Lattice points on spheres |m|^2 = lambda in Z^d: enumeration, fast
// representation counting by half-dimension convolution, admissibility,
// lacunary sequence construction and the Hardy-Littlewood growth ratio.

#include <cstdint>
#include <ostream>
#include <vector>

#include "lacsph/common.hpp"

namespace lacsph::lattice {

// All solutions of m_1^2 + ... + m_d^2 = lambda, stored flat in
// lexicographic order (coords[i*dim .. i*dim+dim-1] is point i).
struct SphereShell {
    int dim = 0;
    long long lambda = 0;
    std::vector<std::int32_t> coords;

    std::size_t count() const { return dim == 0 ? 0 : coords.size() / static_cast<std::size_t>(dim); }
    const std::int32_t* point(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(dim); }
};

// Default enumeration budgets (max lambda) per dimension; counting admits
// 10x more since points are not stored.
long long enumeration_budget(int d);

SphereShell enumerate_sphere(int d, long long lambda);
SphereShell enumerate_sphere(int d, long long lambda, long long budget);

// Representation count r_d(lambda) via r_d = r_{d/2} * r_{d-d/2} convolution
// of cached tables.  Equals enumerate_sphere(d, lambda).count().
long long count_representations(int d, long long lambda);
long long count_representations(int d, long long lambda, long long budget);

// Jacobi's closed form r_4(n) = 8 * sum of divisors of n not divisible by 4.
long long r4_jacobi(long long lambda);

// True when the Hardy-Littlewood/Kloosterman asymptotic for N(lambda) holds:
// d >= 5 unconditionally, d = 4 when lambda is not a multiple of 4.
bool is_admissible(int d, long long lambda);

struct LacunarySequence {
    int dim = 0;
    std::vector<long long> radii;  // strictly increasing, radii[j+1] > 2*radii[j]
    bool admissible_only = false;

    void validate() const;
};

// Greedy construction: lambda_1 = smallest admissible >= seed, then each
// next term is the smallest admissible integer > 2 * previous.
LacunarySequence make_lacunary(int d, long long seed, int count);

// N(lambda) / lambda^{d/2 - 1}.
double hl_ratio(int d, long long lambda);

// One row per point, coordinates comma-separated.
void write_shell_csv(std::ostream& os, const SphereShell& shell);

}  // namespace lacsph::lattice
