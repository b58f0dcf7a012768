#include "lacsph/multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "lacsph/bessel.hpp"
#include "lacsph/expsum.hpp"

namespace lacsph::multiplier {

namespace {

constexpr double kInner = 0.125;
constexpr double kOuter = 0.25;

double glue(double s) {
    // h(s) = f(s)/(f(s)+f(1-s)) with f(s) = exp(-1/s) for s > 0, else 0
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    double fs = std::exp(-1.0 / s);
    double fc = std::exp(-1.0 / (1.0 - s));
    return fs / (fs + fc);
}

}  // namespace

double bump1d(double t) {
    double a = std::abs(t);
    if (a <= kInner) return 1.0;
    if (a >= kOuter) return 0.0;
    return glue((kOuter - a) / kInner);
}

double bump_box(std::span<const double> u) {
    double prod = 1.0;
    for (double t : u) {
        prod *= bump1d(t);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

double bump_scaled(double B, std::span<const double> u) {
    if (B <= 0.0) throw std::invalid_argument("bump_scaled: requires B > 0");
    double prod = 1.0;
    for (double t : u) {
        prod *= bump1d(B * t);
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

double canonical_frequency(double t) {
    double u = std::remainder(t, 1.0);  // (-1/2, 1/2], ties to even
    if (u == 0.5) u = -0.5;
    return u;
}

void canonicalize(std::span<double> xi) {
    for (double& t : xi) t = canonical_frequency(t);
}

double bump_on_torus(std::span<const double> xi) {
    double prod = 1.0;
    for (double t : xi) {
        prod *= bump1d(canonical_frequency(t));
        if (prod == 0.0) return 0.0;
    }
    return prod;
}

double surface_ft(int d, double lambda, std::span<const double> xi) {
    if (lambda <= 0.0) throw std::invalid_argument("surface_ft: requires lambda > 0");
    double norm2 = 0.0;
    for (double t : xi) norm2 += t * t;
    return bessel::radial_profile(d, kTwoPi * std::sqrt(lambda) * std::sqrt(norm2));
}

std::vector<std::pair<double, double>> surface_ft_decay(int d, double lambda,
                                                        std::span<const double> r_grid,
                                                        int directions, int crest_samples,
                                                        std::uint64_t seed) {
    DetRng rng(seed);
    std::vector<std::pair<double, double>> rows;
    rows.reserve(r_grid.size());
    double half_period = 0.5 / std::sqrt(lambda);  // zeros of the radial profile are ~pi apart in 2 pi sqrt(lambda) r
    std::vector<double> dir(static_cast<std::size_t>(d));
    std::vector<double> xi(static_cast<std::size_t>(d));
    for (double r : r_grid) {
        double best = 0.0;
        for (int dd = 0; dd < directions; ++dd) {
            // random direction; the profile is radial, so this guards the
            // radiality of the implementation rather than the estimate
            double norm = 0.0;
            for (int i = 0; i < d; ++i) {
                dir[static_cast<std::size_t>(i)] = 2.0 * rng.next_double() - 1.0;
                norm += dir[static_cast<std::size_t>(i)] * dir[static_cast<std::size_t>(i)];
            }
            norm = std::sqrt(norm);
            if (norm < 1e-9) { dir[0] = 1.0; norm = 1.0; }
            for (int s = 0; s < crest_samples; ++s) {
                double rr = r + half_period * s / crest_samples;
                for (int i = 0; i < d; ++i) xi[static_cast<std::size_t>(i)] = dir[static_cast<std::size_t>(i)] / norm * rr;
                best = std::max(best, std::abs(surface_ft(d, lambda, xi)));
            }
        }
        rows.emplace_back(r, best);
    }
    return rows;
}

MultiplierContext::MultiplierContext(int d, long long lambda, MultiplierOptions opts)
    : d_(d), lambda_(lambda), opts_(opts) {
    if (!lattice::is_admissible(d, lambda))
        throw std::invalid_argument("MultiplierContext: lambda not admissible for d = " + std::to_string(d));
    q_max_full_ = expsum::isqrt(lambda);
    shell_ = lattice::enumerate_sphere(d, lambda);
    // Z(lambda) summed through the same cached evaluator used by the slices,
    // so main_term at xi = 0 reproduces it bit for bit.
    std::vector<long long> zero(static_cast<std::size_t>(d), 0);
    double z = 0.0;
    for (long long q = 1; q <= q_max_full_; ++q) {
        cplx k = kloosterman(q, zero);
        z += k.real();
    }
    z_raw_ = z;
    z_ = (opts.norm == Normalization::MassMatched) ? z : 1.0;
    if (z_ == 0.0) throw std::runtime_error("MultiplierContext: degenerate mass normalizer");
}

cplx MultiplierContext::kloosterman(long long q, std::span<const long long> l) {
    std::vector<long long> reduced(l.size());
    for (std::size_t i = 0; i < l.size(); ++i) {
        long long r = l[i] % q;
        if (r < 0) r += q;
        reduced[i] = r;
    }
    if (q >= 128) return expsum::kloosterman_factored(d_, lambda_, q, reduced);  // beyond the memo key width
    std::uint64_t key = static_cast<std::uint64_t>(q);
    for (long long r : reduced) key = (key << 7) | static_cast<std::uint64_t>(r);
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = kcache_.find(key);
        if (it != kcache_.end()) return it->second;
    }
    cplx value = expsum::kloosterman_factored(d_, lambda_, q, reduced);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    return kcache_.emplace(key, value).first->second;
}

cplx MultiplierContext::discrete(std::span<const double> xi) const {
    double re = 0.0, im = 0.0;
    const std::size_t n = shell_.count();
    for (std::size_t i = 0; i < n; ++i) {
        const std::int32_t* m = shell_.point(i);
        double dot = 0.0;
        for (int c = 0; c < d_; ++c) dot += m[c] * xi[static_cast<std::size_t>(c)];
        double ph = -kTwoPi * dot;
        re += std::cos(ph);
        im += std::sin(ph);
    }
    double inv = 1.0 / static_cast<double>(n);
    return {re * inv, im * inv};
}

MultiplierContext::Located MultiplierContext::locate(std::span<const double> xi, long long q) const {
    Located loc;
    loc.l.resize(static_cast<std::size_t>(d_));
    loc.u.resize(static_cast<std::size_t>(d_));
    double bump = 1.0;
    for (int i = 0; i < d_; ++i) {
        double t = q * canonical_frequency(xi[static_cast<std::size_t>(i)]);
        double li = std::nearbyint(t);  // round half to even; ties sit where Psi vanishes
        loc.l[static_cast<std::size_t>(i)] = static_cast<long long>(li);
        double ui = t - li;
        bump *= bump1d(ui);
        loc.u[static_cast<std::size_t>(i)] = ui / static_cast<double>(q);
    }
    loc.bump = bump;
    return loc;
}

cplx MultiplierContext::q_slice(std::span<const double> xi, long long q) {
    if (q < 1 || q > q_max_full_)
        throw std::invalid_argument("q_slice: q must lie in [1, floor(sqrt(lambda))]");
    Located loc = locate(xi, q);
    if (loc.bump == 0.0) return 0.0;
    cplx k = kloosterman(q, loc.l);
    return k * (loc.bump * surface_ft(d_, static_cast<double>(lambda_), loc.u) / z_);
}

cplx MultiplierContext::main_term(std::span<const double> xi, long long q_max) {
    if (q_max < 1 || q_max > q_max_full_)
        throw std::invalid_argument("main_term: q_max must lie in [1, floor(sqrt(lambda))]");
    cplx acc = 0.0;
    for (long long q = 1; q <= q_max; ++q) acc += q_slice(xi, q);
    return acc;
}

cplx MultiplierContext::low_piece(std::span<const double> xi, long long q, double alpha) {
    if (alpha < 1.0) throw std::invalid_argument("low_piece: requires alpha >= 1");
    if (q < 1 || q > q_max_full_)
        throw std::invalid_argument("low_piece: q must lie in [1, floor(sqrt(lambda))]");
    Located loc = locate(xi, q);
    double sqrt_lambda = std::sqrt(static_cast<double>(lambda_));
    double scale = (opts_.low_scale == LowBumpScale::QLambdaOverAlpha)
                       ? static_cast<double>(q) * sqrt_lambda / alpha
                       : sqrt_lambda / alpha;
    double bump = bump_scaled(scale, loc.u);
    if (bump == 0.0) return 0.0;
    cplx k = kloosterman(q, loc.l);
    return k * (bump * surface_ft(d_, static_cast<double>(lambda_), loc.u) / z_);
}

cplx MultiplierContext::high_piece(std::span<const double> xi, long long q, double alpha) {
    return q_slice(xi, q) - low_piece(xi, q, alpha);
}

cplx MultiplierContext::error(std::span<const double> xi) {
    return discrete(xi) - main_term(xi, q_max_full_);
}

SupSample error_sup_sample(MultiplierContext& ctx, const SampleStrategy& strategy, int jobs) {
    const int d = ctx.dim();
    const long long lambda = ctx.lambda();
    std::vector<std::vector<double>> points;

    // uniform grid
    int res = std::max(1, strategy.grid_resolution);
    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    while (true) {
        std::vector<double> xi(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) xi[static_cast<std::size_t>(i)] = -0.5 + static_cast<double>(idx[static_cast<std::size_t>(i)]) / res;
        points.push_back(std::move(xi));
        int i = d - 1;
        while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == res) {
            idx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
    }

    // near-rational points l/q + delta
    DetRng rng(strategy.seed);
    double offset_base = 1.0 / (16.0 * std::sqrt(static_cast<double>(lambda)));
    for (long long q = 1; q <= ctx.q_max_full(); ++q) {
        for (int variant = 0; variant < strategy.l_per_q; ++variant) {
            std::vector<double> xi(static_cast<std::size_t>(d));
            for (int i = 0; i < d; ++i) {
                long long li = 0;
                if (variant == 1 && i == 0) li = 1 % q;
                if (variant == 2) li = 1 % q;
                if (variant >= 3) li = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(q)));
                double sign = (rng.next_u64() & 1) ? 1.0 : -1.0;
                xi[static_cast<std::size_t>(i)] =
                    canonical_frequency(static_cast<double>(li) / q + sign * offset_base / q);
            }
            points.push_back(std::move(xi));
        }
    }

    // seeded uniform points
    for (int s = 0; s < strategy.random_points; ++s) {
        std::vector<double> xi(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) xi[static_cast<std::size_t>(i)] = rng.next_double() - 0.5;
        points.push_back(std::move(xi));
    }

    // Pre-warm the K cache serially (q-slices touch the cache mutex anyway).
    std::vector<double> values(points.size(), 0.0);
    parallel_for(points.size(), jobs, [&](std::size_t i) {
        values[i] = std::abs(ctx.error(points[i]));
    });
    SupSample out;
    out.points = static_cast<long long>(points.size());
    for (double v : values) out.value = std::max(out.value, v);
    return out;
}

}  // namespace lacsph::multiplier
