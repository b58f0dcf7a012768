#include <doctest.h>

#include <array>
#include <cmath>

#include "lacsph/expsum.hpp"
#include "lacsph/fit.hpp"
#include "lacsph/multiplier.hpp"
#include "lacsph/sweep.hpp"
#include "support/oracles.hpp"

using namespace lacsph;
using namespace lacsph::multiplier;

namespace {
std::vector<double> vec4(double a, double b, double c, double d) { return {a, b, c, d}; }
}  // namespace

TEST_CASE("bump profile") {
    CHECK(bump1d(0.0) == 1.0);
    CHECK(bump1d(0.125) == 1.0);
    CHECK(bump1d(-0.1) == 1.0);
    CHECK(bump1d(0.25) == 0.0);
    CHECK(bump1d(0.3) == 0.0);
    CHECK(bump1d(3.0 / 16.0) == 0.5);  // midpoint of the glue
    CHECK(bump1d(-3.0 / 16.0) == 0.5);
    // interior of the transition band (the glue saturates to 1.0 in double
    // precision within ~1e-2 of the plateau edge)
    for (double t = 0.14; t < 0.236; t += 0.004) {
        CHECK(bump1d(t) > 0.0);
        CHECK(bump1d(t) < 1.0);
        CHECK(bump1d(t) == bump1d(-t));
    }
    // exact plateau/support outside the transition annulus
    for (double t = 0.0; t <= 0.125; t += 0.003) CHECK(bump1d(t) == 1.0);
    for (double t = 0.25; t <= 0.6; t += 0.003) CHECK(bump1d(t) == 0.0);
}

TEST_CASE("bump smoothness proxy: bounded finite differences up to order 3") {
    const double h = 1.0 / 1024.0;
    double worst = 0.0;
    for (double t = -0.5; t <= 0.5; t += h) {
        double d3 = bump1d(t + 3 * h) - 3 * bump1d(t + 2 * h) + 3 * bump1d(t + h) - bump1d(t);
        worst = std::max(worst, std::abs(d3) / (h * h * h));
    }
    CHECK(worst < 1e6);  // scale-1 profile: |psi'''| stays in the 1e5 range
}

TEST_CASE("bump on torus and scaled bump") {
    std::vector<double> zero4(4, 0.0);
    CHECK(bump_on_torus(zero4) == 1.0);
    CHECK(bump_on_torus(vec4(0.3, 0, 0, 0)) == 0.0);
    CHECK(bump_on_torus(vec4(0.9, 0, 0, 0)) == bump_on_torus(vec4(-0.1, 0, 0, 0)));
    CHECK(bump_scaled(2.0, vec4(1.0 / 16, 0, 0, 0)) == 1.0);
    CHECK(bump_scaled(8.0, vec4(1.0 / 16, 0, 0, 0)) == 0.0);
    for (double t : {0.01, 0.17, 0.22, 0.35})
        CHECK(bump_scaled(1.0, vec4(t, 0.03, 0, 0)) == bump_box(vec4(t, 0.03, 0, 0)));
}

TEST_CASE("canonical frequency representative") {
    CHECK(canonical_frequency(0.0) == 0.0);
    CHECK(canonical_frequency(0.5) == -0.5);
    CHECK(canonical_frequency(-0.5) == -0.5);
    CHECK(canonical_frequency(0.75) == doctest::Approx(-0.25));
    CHECK(canonical_frequency(1.25) == doctest::Approx(0.25));
    CHECK(canonical_frequency(-1.6) == doctest::Approx(0.4));
}

TEST_CASE("surface transform: normalization and d = 3 closed form") {
    std::vector<double> zero3(3, 0.0), zero4(4, 0.0);
    CHECK(surface_ft(3, 5.0, zero3) == 1.0);
    CHECK(surface_ft(4, 2.0, zero4) == 1.0);
    DetRng rng(11);
    for (int i = 0; i < 50; ++i) {
        std::vector<double> xi(3);
        double r2 = 0;
        for (auto& c : xi) {
            c = (rng.next_double() - 0.5) * 4.0;
            r2 += c * c;
        }
        double r = std::sqrt(r2);
        CHECK(std::abs(surface_ft(3, 1.0, xi) - std::sin(kTwoPi * r) / (kTwoPi * r)) < 1e-12);
    }
}

TEST_CASE("surface transform vs product quadrature oracle") {
    DetRng rng(42);
    for (int d : {3, 4, 5}) {
        for (long long lambda : {1LL, 4LL, 9LL}) {
            for (int i = 0; i < 10; ++i) {
                std::vector<double> xi(static_cast<std::size_t>(d));
                double norm2 = 0.0;
                for (auto& c : xi) {
                    c = rng.next_double() - 0.5;
                    norm2 += c * c;
                }
                double scale = 2.0 * rng.next_double() / std::max(1e-9, std::sqrt(norm2));
                for (auto& c : xi) c *= scale;  // |xi| <= 2
                cplx oracle = testsupport::surface_ft_quadrature(d, static_cast<double>(lambda), xi);
                CHECK(std::abs(oracle.imag()) < 1e-9);
                CHECK(std::abs(oracle.real() - surface_ft(d, static_cast<double>(lambda), xi)) < 1e-6);
            }
        }
    }
}

TEST_CASE("surface transform: dilation invariance and crossover continuity") {
    DetRng rng(7);
    for (int d : {3, 4, 5, 6, 7, 8}) {
        for (int i = 0; i < 20; ++i) {
            std::vector<double> xi(static_cast<std::size_t>(d)), sxi(static_cast<std::size_t>(d));
            long long lambda = rng.next_range(1, 50);
            for (int c = 0; c < d; ++c) {
                xi[static_cast<std::size_t>(c)] = (rng.next_double() - 0.5) * 3.0;
                sxi[static_cast<std::size_t>(c)] = std::sqrt(static_cast<double>(lambda)) * xi[static_cast<std::size_t>(c)];
            }
            CHECK(std::abs(surface_ft(d, static_cast<double>(lambda), xi) - surface_ft(d, 1.0, sxi)) < 1e-12);
        }
    }
    // series-to-asymptotic handoff for the even-dimension profiles: no jump
    // across the crossover beyond the local slope
    for (int d : {4, 6, 8}) {
        double eps = 1e-9;
        std::vector<double> a{(12.0 - eps) / kTwoPi}, b{(12.0 + eps) / kTwoPi};
        CHECK(std::abs(surface_ft(d, 1.0, a) - surface_ft(d, 1.0, b)) < 1e-9);
    }
}

TEST_CASE("surface envelope decay slopes") {
    std::vector<double> grid;
    for (int i = 0; i < 25; ++i) grid.push_back(std::exp(std::log(1.0) + i * std::log(100.0) / 24.0));
    auto rows3 = surface_ft_decay(3, 1.0, grid, 4, 48, 5);
    std::vector<double> xs, ys;
    for (auto [r, v] : rows3) xs.push_back(r), ys.push_back(v);
    auto fit3 = harness::fit_slope(xs, ys);
    CHECK(std::abs(fit3.slope + 1.0) < 0.1);  // sinc envelope: slope -1
    xs.clear();
    ys.clear();
    for (auto [r, v] : surface_ft_decay(4, 1.0, grid, 4, 48, 5)) xs.push_back(r), ys.push_back(v);
    auto fit4 = harness::fit_slope(xs, ys);
    CHECK(fit4.slope <= -1.5 + 0.1);
}

TEST_CASE("discrete multiplier") {
    MultiplierContext ctx(4, 1);
    std::vector<double> zero4(4, 0.0);
    auto v0 = ctx.discrete(zero4);
    CHECK(v0.real() == 1.0);
    CHECK(v0.imag() == 0.0);
    DetRng rng(3);
    for (int i = 0; i < 25; ++i) {
        auto xi = vec4(rng.next_double() - 0.5, rng.next_double() - 0.5, rng.next_double() - 0.5,
                       rng.next_double() - 0.5);
        double closed = 0.0;
        for (double c : xi) closed += std::cos(kTwoPi * c);
        closed *= 0.25;
        auto v = ctx.discrete(xi);
        CHECK(std::abs(v.real() - closed) < 1e-12);
        CHECK(std::abs(v.imag()) < 1e-12);  // shell symmetric under m -> -m
        auto neg = xi;
        for (auto& c : neg) c = -c;
        auto vn = ctx.discrete(neg);
        CHECK(std::abs(vn - std::conj(v)) < 1e-12);
    }
}

TEST_CASE("at most one residue contributes per modulus") {
    MultiplierContext ctx(4, 101);
    DetRng rng(17);
    for (int i = 0; i < 20; ++i) {
        auto xi = vec4(rng.next_double() - 0.5, rng.next_double() - 0.5, rng.next_double() - 0.5,
                       rng.next_double() - 0.5);
        for (long long q = 1; q <= 10; ++q) {
            auto naive = testsupport::q_slice_naive(ctx, xi, q);
            CHECK(naive.active_l <= 1);
        }
    }
}

TEST_CASE("main term against the full-residue-loop oracle") {
    MultiplierContext ctx(4, 43);  // q up to 6
    DetRng rng(29);
    for (int i = 0; i < 20; ++i) {
        auto xi = vec4(rng.next_double() - 0.5, rng.next_double() - 0.5, rng.next_double() - 0.5,
                       rng.next_double() - 0.5);
        cplx total = 0.0;
        for (long long q = 1; q <= 6; ++q) {
            auto naive = testsupport::q_slice_naive(ctx, xi, q);
            CHECK(std::abs(naive.value - ctx.q_slice(xi, q)) < 1e-9);
            total += naive.value;
        }
        CHECK(std::abs(total - ctx.main_term(xi, 6)) < 1e-9);
    }
}

TEST_CASE("main term normalization at the origin") {
    std::vector<double> zero4(4, 0.0);
    for (long long lambda : {1LL, 3LL, 5LL, 7LL}) {
        MultiplierContext ctx(4, lambda);
        CHECK(std::abs(ctx.main_term(zero4, 1) - cplx(1.0, 0.0)) < 1e-15);
    }
    // with mass matching the full main term has exact unit mass at any radius
    for (long long lambda : {9LL, 33LL, 105LL, 2047LL}) {
        MultiplierContext ctx(4, lambda);
        CHECK(std::abs(ctx.main_term(zero4, ctx.q_max_full()) - cplx(1.0, 0.0)) < 1e-13);
    }
}

TEST_CASE("low/high split identities") {
    MultiplierContext ctx(4, 103);
    DetRng rng(31);
    double alpha = 5.0;
    for (int i = 0; i < 30; ++i) {
        auto xi = vec4(rng.next_double() - 0.5, rng.next_double() - 0.5, rng.next_double() - 0.5,
                       rng.next_double() - 0.5);
        for (long long q = 1; q <= 5; ++q) {
            cplx low = ctx.low_piece(xi, q, alpha);
            cplx high = ctx.high_piece(xi, q, alpha);
            CHECK(std::abs(low + high - ctx.q_slice(xi, q)) < 1e-12);
        }
    }
    // high piece vanishes at the rational center and on the stated cube
    MultiplierContext ctx25(4, 25);
    double sqrt_lambda = 5.0;
    long long q = 2;
    double alpha2 = 3.0;
    double cube = alpha2 / (8.0 * q * sqrt_lambda);
    for (double u1 : {0.0, 0.3 * cube, -0.8 * cube, 0.99 * cube}) {
        for (double u2 : {0.0, -0.5 * cube, 0.9 * cube}) {
            auto xi = vec4(0.5 + u1, u2, 0.5 + 0.2 * cube, 0.0);  // near l/q = (1/2, 0, 1/2, 0)
            CHECK(std::abs(ctx25.high_piece(xi, q, alpha2)) == 0.0);
        }
    }
}

TEST_CASE("error multiplier vanishes at the origin") {
    std::vector<double> zero4(4, 0.0);
    for (long long lambda : {1LL, 3LL, 7LL, 9LL, 33LL, 105LL, 2047LL}) {
        MultiplierContext ctx(4, lambda);
        CHECK(std::abs(ctx.error(zero4)) < 1e-12);
    }
    // raw scaling: the deficit at the origin is exactly the excess of the
    // partial singular series, e.g. K(9, 3, 0) = 2/9 at lambda = 9
    MultiplierOptions literal;
    literal.norm = Normalization::Literal;
    MultiplierContext ctx9(4, 9, literal);
    CHECK(ctx9.error(zero4).real() == doctest::Approx(-2.0 / 9.0).epsilon(1e-12));
    for (long long lambda : {1LL, 2LL, 3LL, 5LL, 7LL}) {
        MultiplierContext ctx(4, lambda, literal);
        CHECK(std::abs(ctx.error(zero4)) < 1e-12);
    }
}

TEST_CASE("error sup sampling: lower bound and frozen fixture") {
    MultiplierContext ctx(4, 7);
    SampleStrategy strategy;
    strategy.seed = 1;
    auto sup = error_sup_sample(ctx, strategy, 1);
    CHECK(sup.points > 600);
    for (auto xi : {vec4(0.1, 0.2, -0.3, 0.4), vec4(-0.5, 0.25, 0.0, 0.125)})
        CHECK(sup.value >= std::abs(ctx.error(xi)) - 1e-12);

    harness::FixtureStore store(std::string(LACSPH_TEST_FIXTURES) + "/multiplier_fixtures.json");
    REQUIRE(store.has("error_sup_sample_d4_lambda7"));
    auto check = store.check("error_sup_sample_d4_lambda7", sup.value, 1e-9);
    CHECK(check.pass);
}

TEST_CASE("error multiplier decay along lacunary radii") {
    for (int d : {4, 5}) {
        std::vector<double> xs, ys;
        long long lambda = 1;
        // d = 5 shells get large quickly; 2^11 - 1 keeps the sweep affordable
        while (lambda <= (d == 4 ? 8191 : 2047)) {
            MultiplierContext ctx(d, lambda);
            SampleStrategy strategy;
            strategy.seed = 1;
            if (d == 5) {
                strategy.grid_resolution = 3;
                strategy.random_points = 64;
                strategy.l_per_q = 2;
            }
            auto sup = error_sup_sample(ctx, strategy, 1);
            xs.push_back(static_cast<double>(lambda));
            ys.push_back(sup.value);
            lambda = 2 * lambda + 1;
        }
        auto fit = harness::fit_slope(xs, ys);
        CHECK(fit.slope <= 0.25 * (3.0 - d) + 0.2);
    }
}

TEST_CASE("context guards") {
    CHECK_THROWS_AS(MultiplierContext(4, 12), std::invalid_argument);  // 4 | lambda
    MultiplierContext ctx(4, 11);
    std::vector<double> zero4(4, 0.0);
    CHECK_THROWS_AS(ctx.q_slice(zero4, 4), std::invalid_argument);  // q > floor(sqrt(11))
    CHECK_THROWS_AS(ctx.low_piece(zero4, 1, 0.5), std::invalid_argument);
}
