#include "lacsph/arith.hpp"

#include <algorithm>
#include <numeric>

namespace lacsph::arith {

namespace {

void check_positive(long long n, const char* who) {
    if (n < 1) throw std::invalid_argument(std::string(who) + ": argument must be >= 1");
}

// (prime, exponent) pairs by trial division; n <= 1e4 in practice.
std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> out;
    for (long long p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            int e = 0;
            while (n % p == 0) n /= p, ++e;
            out.emplace_back(p, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

}  // namespace

Residue Residue::reduce(long long v, long long q) {
    check_positive(q, "Residue::reduce");
    long long r = v % q;
    if (r < 0) r += q;
    return Residue{r, q};
}

std::vector<long long> units(long long q) {
    check_positive(q, "units");
    std::vector<long long> out;
    for (long long a = 0; a < q; ++a)
        if (std::gcd(a, q) == 1) out.push_back(a);
    return out;
}

long long euler_phi(long long n) {
    check_positive(n, "euler_phi");
    long long phi = n;
    for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

int moebius(long long n) {
    check_positive(n, "moebius");
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

std::vector<long long> divisors(long long n) {
    check_positive(n, "divisors");
    std::vector<long long> out;
    for (long long d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d != n / d) out.push_back(n / d);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

long long rho_weight(long long q, long long lambda) {
    check_positive(q, "rho_weight");
    check_positive(lambda, "rho_weight");
    long long pow2 = 1;
    while (q % 2 == 0) q /= 2, pow2 *= 2;
    return std::gcd(q, lambda) * pow2;
}

long long ramanujan_sum(long long q, long long n) {
    check_positive(q, "ramanujan_sum");
    long long m = n % q;
    if (m < 0) m += q;
    long long g = std::gcd(q, m);  // gcd(q, 0) = q handles n = 0 mod q
    long long qd = q / g;
    return moebius(qd) * (euler_phi(q) / euler_phi(qd));
}

cplx gauss_sum(long long a, long long b, long long q) {
    check_positive(q, "gauss_sum");
    a %= q;
    if (a < 0) a += q;
    b %= q;
    if (b < 0) b += q;
    cplx acc = 0.0;
    for (long long x = 0; x < q; ++x) acc += unit_phase_frac(a * x * x + b * x, q);
    return acc;
}

cplx gauss_sum(const Residue& a, const Residue& b, long long q) {
    return gauss_sum(a.value, b.value, q);
}

}  // namespace lacsph::arith
