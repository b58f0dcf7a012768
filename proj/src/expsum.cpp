#include "lacsph/expsum.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "lacsph/arith.hpp"

namespace lacsph::expsum {

namespace {

constexpr double kBruteBudget = 1e8;
constexpr double kFactoredBudget = 1e9;
constexpr long long kSupExactLimit = 1000000;  // enumerate all l while q^d <= this
constexpr long long kGaussCacheLimit = 128;

// Per-modulus tables: reduced residues, the phase table e(k/q), and the
// Gauss sums g(a, b; q) for every a in U_q, b in [0, q).
struct ModulusTables {
    long long q = 0;
    std::vector<long long> units;
    std::vector<cplx> phase;  // phase[k] = e(k/q)
    std::vector<cplx> gauss;  // gauss[ai*q + b] = g(units[ai], b; q)

    explicit ModulusTables(long long modulus) : q(modulus), units(arith::units(modulus)) {
        phase.resize(static_cast<std::size_t>(q));
        for (long long k = 0; k < q; ++k)
            phase[static_cast<std::size_t>(k)] = unit_phase(static_cast<double>(k) / static_cast<double>(q));
        gauss.resize(units.size() * static_cast<std::size_t>(q));
        for (std::size_t ai = 0; ai < units.size(); ++ai) {
            long long a = units[ai];
            for (long long b = 0; b < q; ++b) {
                cplx acc = 0.0;
                for (long long x = 0; x < q; ++x)
                    acc += phase[static_cast<std::size_t>((a * x * x + b * x) % q)];
                gauss[ai * static_cast<std::size_t>(q) + static_cast<std::size_t>(b)] = acc;
            }
        }
    }
};

const ModulusTables& tables_for(long long q) {
    static std::mutex mutex;
    static std::map<long long, std::unique_ptr<ModulusTables>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(q);
    if (it == cache.end())
        it = cache.emplace(q, std::make_unique<ModulusTables>(q)).first;
    return *it->second;
}

double pow_ll(long long base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= static_cast<double>(base);
    return r;
}

std::vector<long long> reduce_l(std::span<const long long> l, int d, long long q) {
    if (static_cast<int>(l.size()) != d)
        throw std::invalid_argument("kloosterman: l must have d components");
    std::vector<long long> out(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        long long r = l[i] % q;
        if (r < 0) r += q;
        out[static_cast<std::size_t>(i)] = r;
    }
    return out;
}

void check_params(int d, long long lambda, long long q) {
    if (d < 1) throw std::invalid_argument("kloosterman: d must be >= 1");
    if (lambda < 1) throw std::invalid_argument("kloosterman: lambda must be >= 1");
    if (q < 1) throw std::invalid_argument("kloosterman: q must be >= 1");
}

}  // namespace

long long isqrt(long long n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

cplx kloosterman_bruteforce(const KloostermanParams& p) {
    check_params(p.dim, p.lambda, p.q);
    const int d = p.dim;
    const long long q = p.q;
    const long long phi = arith::euler_phi(q);
    if (pow_ll(q, d) * static_cast<double>(phi) > kBruteBudget)
        throw resource_error("kloosterman_bruteforce: q^d*phi(q) exceeds work budget at q=" +
                             std::to_string(q));
    std::vector<long long> l = reduce_l(p.l, d, q);
    std::vector<cplx> phase(static_cast<std::size_t>(q));
    for (long long k = 0; k < q; ++k)
        phase[static_cast<std::size_t>(k)] = unit_phase(static_cast<double>(k) / static_cast<double>(q));

    cplx total = 0.0;
    std::vector<long long> coord_phase(static_cast<std::size_t>(d * q));
    // odometer over x in [0,q)^d keeping the running phase mod q per level
    std::vector<long long> x(static_cast<std::size_t>(d), 0);
    std::vector<long long> level(static_cast<std::size_t>(d) + 1, 0);
    for (long long a : arith::units(q)) {
        for (int i = 0; i < d; ++i)
            for (long long v = 0; v < q; ++v)
                coord_phase[static_cast<std::size_t>(i * q + v)] = (a * v * v + l[static_cast<std::size_t>(i)] * v) % q;
        long long base = ((q - (p.lambda % q)) * a) % q;  // e(-lambda a / q) offset
        std::fill(x.begin(), x.end(), 0);
        level[0] = base;
        for (int i = 0; i < d; ++i) level[i + 1] = (level[i] + coord_phase[static_cast<std::size_t>(i * q)]) % q;
        cplx acc = 0.0;
        while (true) {
            acc += phase[static_cast<std::size_t>(level[d])];
            int i = d - 1;
            while (i >= 0) {
                if (++x[static_cast<std::size_t>(i)] < q) break;
                x[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            for (int k = i; k < d; ++k)
                level[k + 1] = (level[k] + coord_phase[static_cast<std::size_t>(k * q + x[static_cast<std::size_t>(k)])]) % q;
        }
        total += acc;
    }
    return total / pow_ll(q, d);
}

cplx kloosterman_factored(int d, long long lambda, long long q, std::span<const long long> l) {
    check_params(d, lambda, q);
    const long long phi = arith::euler_phi(q);
    if (static_cast<double>(q) * static_cast<double>(phi) * d > kFactoredBudget)
        throw resource_error("kloosterman_factored: q*phi(q)*d exceeds work budget at q=" +
                             std::to_string(q));
    std::vector<long long> lr = reduce_l(l, d, q);
    cplx total = 0.0;
    if (q <= kGaussCacheLimit) {
        const ModulusTables& t = tables_for(q);
        for (std::size_t ai = 0; ai < t.units.size(); ++ai) {
            long long a = t.units[ai];
            cplx term = t.phase[static_cast<std::size_t>(((q - lambda % q) * a) % q)];
            for (int i = 0; i < d; ++i)
                term *= t.gauss[ai * static_cast<std::size_t>(q) + static_cast<std::size_t>(lr[static_cast<std::size_t>(i)])];
            total += term;
        }
    } else {
        for (long long a : arith::units(q)) {
            cplx term = unit_phase_frac((q - lambda % q) * a, q);
            for (int i = 0; i < d; ++i) term *= arith::gauss_sum(a, lr[static_cast<std::size_t>(i)], q);
            total += term;
        }
    }
    return total / pow_ll(q, d);
}

cplx kloosterman_factored(const KloostermanParams& p) {
    return kloosterman_factored(p.dim, p.lambda, p.q, p.l);
}

namespace {

// Exact sup over all l in Z_q^d: depth-first over coordinates carrying the
// per-a partial Gauss products, so each tree node costs phi(q) multiplies.
double sup_exact(int d, long long lambda, long long q) {
    const ModulusTables& t = tables_for(q);
    const std::size_t nu = t.units.size();
    std::vector<cplx> stack((static_cast<std::size_t>(d) + 1) * nu);
    for (std::size_t ai = 0; ai < nu; ++ai)
        stack[ai] = t.phase[static_cast<std::size_t>(((q - lambda % q) * t.units[ai]) % q)];
    const double norm = pow_ll(q, d);
    double best = 0.0;
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == d) {
            cplx acc = 0.0;
            const cplx* leaf = &stack[static_cast<std::size_t>(d) * nu];
            for (std::size_t ai = 0; ai < nu; ++ai) acc += leaf[ai];
            best = std::max(best, std::abs(acc) / norm);
            return;
        }
        const cplx* src = &stack[static_cast<std::size_t>(pos) * nu];
        cplx* dst = &stack[(static_cast<std::size_t>(pos) + 1) * nu];
        for (long long v = 0; v < q; ++v) {
            for (std::size_t ai = 0; ai < nu; ++ai)
                dst[ai] = src[ai] * t.gauss[ai * static_cast<std::size_t>(q) + static_cast<std::size_t>(v)];
            self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return best;
}

}  // namespace

SupEstimate kloosterman_sup(int d, long long lambda, long long q, int l_samples,
                            std::uint64_t seed) {
    check_params(d, lambda, q);
    if (q > 200) throw std::invalid_argument("kloosterman_sup: requires q <= 200");
    SupEstimate est;
    double qd = pow_ll(q, d);
    if (qd <= static_cast<double>(kSupExactLimit)) {
        est.exact = true;
        est.points = static_cast<long long>(qd);
        est.value = sup_exact(d, lambda, q);
        return est;
    }
    est.exact = false;
    DetRng rng(seed ^ (static_cast<std::uint64_t>(q) << 32) ^ static_cast<std::uint64_t>(lambda));
    std::vector<long long> l(static_cast<std::size_t>(d), 0);
    double best = std::abs(kloosterman_factored(d, lambda, q, l));  // l = 0 always included
    for (int s = 0; s < l_samples; ++s) {
        for (int i = 0; i < d; ++i) l[static_cast<std::size_t>(i)] = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(q)));
        best = std::max(best, std::abs(kloosterman_factored(d, lambda, q, l)));
    }
    est.points = l_samples + 1;
    est.value = best;
    return est;
}

double kloosterman_q_sum(int d, long long lambda, LStrategy strategy, std::uint64_t seed) {
    check_params(d, lambda, 1);
    if (lambda > 10000) throw std::invalid_argument("kloosterman_q_sum: requires lambda <= 1e4");
    long long qmax = isqrt(lambda);
    double acc = 0.0;
    std::vector<long long> l(static_cast<std::size_t>(d), 0);
    DetRng rng(seed ^ static_cast<std::uint64_t>(lambda));
    for (long long q = 1; q <= qmax; ++q) {
        if (strategy == LStrategy::RandomPerQ)
            for (int i = 0; i < d; ++i) l[static_cast<std::size_t>(i)] = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(q)));
        else
            std::fill(l.begin(), l.end(), 0);
        acc += std::abs(kloosterman_factored(d, lambda, q, l));
    }
    return acc;
}

double rho_weighted_sum(double beta, long long lambda) {
    if (lambda < 1) throw std::invalid_argument("rho_weighted_sum: lambda must be >= 1");
    if (lambda > 1000000) throw std::invalid_argument("rho_weighted_sum: requires lambda <= 1e6");
    long long qmax = isqrt(lambda);
    double acc = 0.0;
    for (long long q = 1; q <= qmax; ++q)
        acc += std::pow(static_cast<double>(q), beta) *
               std::sqrt(static_cast<double>(arith::rho_weight(q, lambda)));
    return acc;
}

double partial_singular_series(int d, long long lambda) {
    long long qmax = isqrt(lambda);
    std::vector<long long> zero(static_cast<std::size_t>(d), 0);
    double acc = 0.0;
    for (long long q = 1; q <= qmax; ++q) {
        cplx k = kloosterman_factored(d, lambda, q, zero);
        if (std::abs(k.imag()) > 1e-9)
            throw std::runtime_error("partial_singular_series: K(lambda,q,0) not real");
        acc += k.real();
    }
    return acc;
}

}  // namespace lacsph::expsum
