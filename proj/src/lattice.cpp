#include "lacsph/lattice.hpp"

#include <cmath>
#include <mutex>

namespace lacsph::lattice {

namespace {

long long isqrt_floor(long long n) {
    if (n < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

void check_dim(int d, int lo, int hi, const char* who) {
    if (d < lo || d > hi)
        throw std::invalid_argument(std::string(who) + ": dimension out of range");
}

// Emits points in lexicographic order: coordinate 0 runs outermost from
// -floor(sqrt(rem)) upward, recursing on the remaining budget.
void enumerate_rec(int d, int pos, long long rem, std::vector<std::int32_t>& cur,
                   std::vector<std::int32_t>& out) {
    if (pos == d) {
        if (rem == 0) out.insert(out.end(), cur.begin(), cur.end());
        return;
    }
    long long bound = isqrt_floor(rem);
    for (long long v = -bound; v <= bound; ++v) {
        cur[pos] = static_cast<std::int32_t>(v);
        enumerate_rec(d, pos + 1, rem - v * v, cur, out);
    }
}

// Cached representation-count tables r_k[0..limit], built on demand.
// Constructed under a mutex, read-only afterwards.
struct RepTables {
    std::mutex mutex;
    std::vector<std::vector<long long>> table;  // table[k] for k = 1..8
    std::vector<long long> limit;

    RepTables() : table(9), limit(9, -1) {}

    // r_1 by direct squares, r_2 by two-square enumeration, higher k by
    // convolving the two half-dimension tables: O(limit^2) per level.
    void build(int k, long long lim) {
        if (limit[k] >= lim) return;
        std::vector<long long>& t = table[k];
        t.assign(static_cast<std::size_t>(lim) + 1, 0);
        if (k == 1) {
            for (long long x = 0; x * x <= lim; ++x) t[static_cast<std::size_t>(x * x)] += (x == 0 ? 1 : 2);
        } else if (k == 2) {
            for (long long x = 0; x * x <= lim; ++x) {
                for (long long y = 0; x * x + y * y <= lim; ++y) {
                    long long n = x * x + y * y;
                    long long mult = (x == 0 ? 1 : 2) * (y == 0 ? 1 : 2);
                    t[static_cast<std::size_t>(n)] += mult;
                }
            }
        } else {
            int a = k / 2, b = k - k / 2;
            build(a, lim);
            build(b, lim);
            const auto& ta = table[a];
            const auto& tb = table[b];
            for (long long n = 0; n <= lim; ++n) {
                long long acc = 0;
                for (long long m = 0; m <= n; ++m) acc += ta[static_cast<std::size_t>(m)] * tb[static_cast<std::size_t>(n - m)];
                t[static_cast<std::size_t>(n)] = acc;
            }
        }
        limit[k] = lim;
    }

    long long query(int k, long long lambda) {
        std::lock_guard<std::mutex> lock(mutex);
        if (limit[k] < lambda) {
            // grow geometrically so repeated queries amortize
            long long lim = std::max<long long>(lambda, std::max<long long>(2 * limit[k], 1024));
            build(k, lim);
        }
        return table[k][static_cast<std::size_t>(lambda)];
    }
};

RepTables& rep_tables() {
    static RepTables tables;
    return tables;
}

}  // namespace

long long enumeration_budget(int d) {
    if (d <= 4) return 100000;
    if (d == 5) return 10000;
    return 4000;
}

SphereShell enumerate_sphere(int d, long long lambda) {
    return enumerate_sphere(d, lambda, enumeration_budget(d));
}

SphereShell enumerate_sphere(int d, long long lambda, long long budget) {
    check_dim(d, 2, 8, "enumerate_sphere");
    if (lambda < 0) throw std::invalid_argument("enumerate_sphere: lambda must be >= 0");
    if (lambda > budget)
        throw resource_error("enumerate_sphere: lambda " + std::to_string(lambda) +
                             " exceeds budget " + std::to_string(budget));
    SphereShell shell;
    shell.dim = d;
    shell.lambda = lambda;
    std::vector<std::int32_t> cur(static_cast<std::size_t>(d));
    enumerate_rec(d, 0, lambda, cur, shell.coords);
    return shell;
}

long long count_representations(int d, long long lambda) {
    return count_representations(d, lambda, 10 * enumeration_budget(d));
}

long long count_representations(int d, long long lambda, long long budget) {
    check_dim(d, 2, 8, "count_representations");
    if (lambda < 0) throw std::invalid_argument("count_representations: lambda must be >= 0");
    if (lambda > budget)
        throw resource_error("count_representations: lambda " + std::to_string(lambda) +
                             " exceeds budget " + std::to_string(budget));
    if (lambda == 0) return 1;  // the origin
    if (d <= 2) return rep_tables().query(d, lambda);
    int a = d / 2, b = d - d / 2;
    // one O(lambda) convolution per query against the cached half tables
    RepTables& tables = rep_tables();
    long long acc = 0;
    for (long long m = 0; m <= lambda; ++m)
        acc += tables.query(a, m) * tables.query(b, lambda - m);
    return acc;
}

long long r4_jacobi(long long lambda) {
    if (lambda < 1) throw std::invalid_argument("r4_jacobi: lambda must be >= 1");
    long long acc = 0;
    for (long long t = 1; t * t <= lambda; ++t) {
        if (lambda % t != 0) continue;
        long long u = lambda / t;
        if (t % 4 != 0) acc += t;
        if (u != t && u % 4 != 0) acc += u;
    }
    return 8 * acc;
}

bool is_admissible(int d, long long lambda) {
    if (d < 4) throw std::invalid_argument("is_admissible: requires d >= 4");
    return d >= 5 || lambda % 4 != 0;
}

void LacunarySequence::validate() const {
    for (std::size_t j = 0; j + 1 < radii.size(); ++j)
        if (radii[j + 1] <= 2 * radii[j])
            throw std::invalid_argument("LacunarySequence: requires radii[j+1] > 2*radii[j]");
    if (dim == 4 && admissible_only)
        for (long long r : radii)
            if (r % 4 == 0) throw std::invalid_argument("LacunarySequence: d = 4 requires radii not in 4N");
}

LacunarySequence make_lacunary(int d, long long seed, int count) {
    if (seed < 1 || count < 1) throw std::invalid_argument("make_lacunary: seed and count must be >= 1");
    bool skip4 = (d == 4);
    auto next_admissible = [&](long long from) {
        long long v = from;
        while (skip4 && v % 4 == 0) ++v;
        return v;
    };
    LacunarySequence seq;
    seq.dim = d;
    seq.admissible_only = skip4;
    long long cur = next_admissible(seed);
    seq.radii.push_back(cur);
    for (int j = 1; j < count; ++j) {
        cur = next_admissible(2 * cur + 1);
        seq.radii.push_back(cur);
    }
    seq.validate();
    return seq;
}

double hl_ratio(int d, long long lambda) {
    if (lambda < 1) throw std::invalid_argument("hl_ratio: lambda must be >= 1");
    if (!is_admissible(d, lambda)) throw std::invalid_argument("hl_ratio: lambda not admissible");
    double count = static_cast<double>(count_representations(d, lambda));
    return count / std::pow(static_cast<double>(lambda), 0.5 * d - 1.0);
}

void write_shell_csv(std::ostream& os, const SphereShell& shell) {
    for (int i = 0; i < shell.dim; ++i) os << (i ? "," : "") << "m" << (i + 1);
    os << "\n";
    for (std::size_t i = 0; i < shell.count(); ++i) {
        const std::int32_t* p = shell.point(i);
        for (int c = 0; c < shell.dim; ++c) os << (c ? "," : "") << p[c];
        os << "\n";
    }
}

}  // namespace lacsph::lattice
