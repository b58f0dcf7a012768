// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion with the elapsed time.  Exit
// status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "lacsph/arith.hpp"
#include "lacsph/experiments.hpp"
#include "lacsph/expsum.hpp"
#include "lacsph/lattice.hpp"
#include "lacsph/multiplier.hpp"
#include "lacsph/operators.hpp"
#include "support/oracles.hpp"

using namespace lacsph;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    int id;
    const char* label;
    double limit_seconds;
    Clock::time_point start;

    Criterion(int id_, const char* label_, double limit) : id(id_), label(label_), limit_seconds(limit) {
        start = Clock::now();
    }
    void finish(bool pass, const std::string& detail) {
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        bool in_time = elapsed < limit_seconds;
        bool ok = pass && in_time;
        if (!ok) ++failures;
        std::printf("[%2d] %s  %-34s  %6.1fs/%loss budget  %s\n", id, ok ? "PASS" : "FAIL", label,
                    elapsed, static_cast<long>(limit_seconds), detail.c_str());
        std::fflush(stdout);
    }
};

std::string fmt(const char* pattern, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof(buf), pattern, a, b);
    return buf;
}

harness::RunContext context() {
    harness::RunContext ctx;
    ctx.seed = 1;
    ctx.jobs = default_jobs();
    ctx.config_hash = "acceptance";
    return ctx;
}

}  // namespace

int main() {
    harness::RunContext ctx = context();
    std::printf("acceptance suite, seed=%llu jobs=%d\n", static_cast<unsigned long long>(ctx.seed),
                ctx.jobs);

    // 1. Kloosterman oracle equivalence ------------------------------------
    {
        Criterion c(1, "kloosterman oracle equivalence", 120);
        harness::KloostermanRunParams p;
        p.oracle_q_max = 24;
        p.oracle_pairs = 20;
        p.lemma_sweep = false;
        harness::SweepReport r = harness::run_kloosterman(ctx, p);
        double diff = r.summary["oracle_max_abs_diff"].get<double>();
        c.finish(diff <= 1e-9, fmt("max |factored - brute| = %.3g (tol %.0e)", diff, 1e-9));
    }

    // 2. Lattice count equivalence ------------------------------------------
    {
        Criterion c(2, "lattice count equivalence", 60);
        bool ok = true;
        for (int d : {4, 5})
            for (long long lambda = 0; lambda <= 500 && ok; ++lambda)
                ok = lattice::count_representations(d, lambda) ==
                     static_cast<long long>(lattice::enumerate_sphere(d, lambda).count());
        for (long long lambda = 1; lambda <= 2000 && ok; ++lambda)
            ok = lattice::count_representations(4, lambda) == lattice::r4_jacobi(lambda);
        c.finish(ok, ok ? "all counts equal (exact integers)" : "count mismatch");
    }

    // 3. Ramanujan closed form ----------------------------------------------
    {
        Criterion c(3, "ramanujan closed form vs brute force", 60);
        double worst = 0.0;
        for (long long q = 1; q <= 500; ++q) {
            auto us = arith::units(q);
            for (long long n = -50; n <= 50; ++n) {
                cplx direct = 0.0;
                for (long long a : us) direct += unit_phase_frac(a * n, q);
                worst = std::max(worst, std::abs(direct.imag()));
                worst = std::max(worst,
                                 std::abs(direct.real() - static_cast<double>(arith::ramanujan_sum(q, n))));
            }
        }
        c.finish(worst <= 1e-9, fmt("max deviation %.3g (tol %.0e)", worst, 1e-9));
    }

    // 4. Hardy-Littlewood growth slope ---------------------------------------
    {
        Criterion c(4, "lattice count growth slope", 120);
        harness::CountParams p;
        p.enum_check_max = 0;
        p.jacobi_check_max = 0;
        harness::SweepReport r = harness::run_count(ctx, p);
        double s4 = r.summary["hl_fit_d4"]["slope_fitted"].get<double>();
        double s5 = r.summary["hl_fit_d5"]["slope_fitted"].get<double>();
        bool ok = std::abs(s4 - 1.0) <= 0.15 && std::abs(s5 - 1.5) <= 0.15;
        c.finish(ok, fmt("slopes d4=%.4f d5=%.4f (targets 1, 1.5, +-0.15)", s4, s5));
    }

    // 5. Kloosterman lemma q-sum sweep -----------------------------------------
    {
        Criterion c(5, "kloosterman q-sum decay sweep", 600);
        harness::KloostermanRunParams p;
        p.oracle_q_max = 0;
        p.oracle_pairs = 0;
        p.lemma_sweep = true;
        harness::SweepReport r = harness::run_kloosterman(ctx, p);
        double s4 = r.summary["lemma_fit_d4"]["slope_fitted"].get<double>();
        double s5 = r.summary["lemma_fit_d5"]["slope_fitted"].get<double>();
        bool ok = s4 <= -0.25 + 0.15 && s5 <= -0.5 + 0.15;
        c.finish(ok, fmt("slopes d4=%.4f (bound -0.10) d5=%.4f (bound -0.35)", s4, s5));
    }

    // 6. rho-weighted sums -------------------------------------------------------
    {
        Criterion c(6, "rho-weighted sum sweep", 180);
        harness::RhoSumParams p;  // betas 0, -3/2, (1-d)/2
        harness::SweepReport r = harness::run_rho_sum(ctx, p);
        double s0 = r.summary["rho_fit_beta_0"]["slope_fitted"].get<double>();
        double s1 = r.summary["rho_fit_beta_-1.5"]["slope_fitted"].get<double>();
        double s2 = r.summary["rho_fit_beta_-2"]["slope_fitted"].get<double>();
        bool ok = s0 <= 0.6 && s1 <= -0.15 && s2 <= -0.4;
        c.finish(ok, fmt("slopes b=0: %.4f, b=-1.5: %.4f", s0, s1) +
                         fmt(", b=-2: %.4f (bounds 0.6/-0.15/-0.4)", s2, 0));
    }

    // 7. Surface-measure transform ------------------------------------------------
    {
        Criterion c(7, "surface transform oracle + decay", 120);
        DetRng rng(ctx.seed);
        double worst_quad = 0.0;
        for (int d : {3, 4, 5}) {
            for (long long lambda : {1LL, 4LL, 9LL}) {
                for (int i = 0; i < 50; ++i) {
                    std::vector<double> xi(static_cast<std::size_t>(d));
                    double norm2 = 0.0;
                    for (auto& v : xi) {
                        v = rng.next_double() - 0.5;
                        norm2 += v * v;
                    }
                    double scale = 2.0 * rng.next_double() / std::max(1e-9, std::sqrt(norm2));
                    for (auto& v : xi) v *= scale;
                    cplx oracle = testsupport::surface_ft_quadrature(d, static_cast<double>(lambda), xi);
                    worst_quad = std::max(worst_quad, std::abs(oracle - cplx(multiplier::surface_ft(
                                                                   d, static_cast<double>(lambda), xi), 0.0)));
                }
            }
        }
        harness::SurfaceDecayParams p;
        harness::SweepReport r = harness::run_surface_decay(ctx, p);
        double sinc_dev = r.summary["sinc_identity_max_dev"].get<double>();
        bool slopes_ok = true;
        for (int d : {3, 4, 5})
            for (long long lambda : {1LL, 4LL, 9LL})
                slopes_ok = slopes_ok &&
                            r.summary["envelope_fit_d" + std::to_string(d) + "_lambda" +
                                      std::to_string(lambda)]["pass"].get<bool>();
        bool ok = worst_quad <= 1e-6 && sinc_dev <= 1e-12 && slopes_ok;
        c.finish(ok, fmt("quad dev %.2g (tol 1e-6), sinc dev %.2g (tol 1e-12)", worst_quad, sinc_dev) +
                         (slopes_ok ? ", envelope slopes ok" : ", envelope slope out of bound"));
    }

    // 8. Error multiplier decay ------------------------------------------------------
    {
        Criterion c(8, "error multiplier decay (d=4)", 900);
        harness::ErrorDecayParams p;  // d = 4, lambda <= 1e4, slack 0.2
        harness::SweepReport r = harness::run_error_decay(ctx, p);
        double slope = r.summary["error_decay_fit_d4"]["slope_fitted"].get<double>();
        c.finish(slope <= -0.25 + 0.2, fmt("slope %.4f (bound %.2f)", slope, -0.05));
    }

    // 9. Structural identities ----------------------------------------------------------
    {
        Criterion c(9, "structural identities", 120);
        std::string detail = "all identities within tolerance";
        bool ok = true;
        auto fail = [&](const std::string& what) {
            ok = false;
            if (detail[0] == 'a') detail = what;
        };
        std::vector<double> zero4(4, 0.0);

        // at most one residue per modulus (exhaustive for q <= 10)
        {
            multiplier::MultiplierContext mctx(4, 101);
            DetRng rng(ctx.seed);
            for (int i = 0; i < 20 && ok; ++i) {
                std::vector<double> xi(4);
                for (auto& v : xi) v = rng.next_double() - 0.5;
                for (long long q = 1; q <= 10; ++q)
                    if (testsupport::q_slice_naive(mctx, xi, q).active_l > 1) fail("multiple active l");
            }
        }
        // low + high = slice; high vanishes near the rational center
        {
            multiplier::MultiplierContext mctx(4, 103);
            DetRng rng(ctx.seed + 1);
            for (int i = 0; i < 30; ++i) {
                std::vector<double> xi(4);
                for (auto& v : xi) v = rng.next_double() - 0.5;
                for (long long q = 1; q <= 5; ++q) {
                    cplx lh = mctx.low_piece(xi, q, 5.0) + mctx.high_piece(xi, q, 5.0);
                    if (std::abs(lh - mctx.q_slice(xi, q)) > 1e-12) fail("low+high != slice");
                }
            }
            multiplier::MultiplierContext m25(4, 25);
            double cube = 3.0 / (8.0 * 2.0 * 5.0);
            for (double u : {0.0, 0.5 * cube, -0.9 * cube})
                if (std::abs(m25.high_piece(std::vector<double>{0.5 + u, u, 0.0, 0.5}, 2, 3.0)) != 0.0)
                    fail("high piece nonzero inside its vanishing cube");
        }
        // unit mass of the discrete multiplier and zero error at the origin
        for (long long lambda : {1LL, 3LL, 7LL, 9LL, 33LL, 105LL, 2047LL}) {
            multiplier::MultiplierContext mctx(4, lambda);
            if (std::abs(mctx.discrete(zero4) - cplx(1.0, 0.0)) > 1e-12) fail("discrete(0) != 1");
            if (std::abs(mctx.error(zero4)) > 1e-12) fail("error(0) != 0");
        }
        // |A_tau f| = M_lac f, exact
        {
            auto seq = lattice::make_lacunary(4, 1, 3);
            ops::GridFunction f(4, 5);
            DetRng rng(ctx.seed + 2);
            for (auto& v : f.values()) v = rng.next_double() * 2.0 - 1.0;
            ops::Linearization lin = ops::stopping_time_linearize(f, seq);
            for (std::size_t i = 0; i < lin.maximal.size(); ++i)
                if (std::abs(lin.a_tau.values()[i]) != lin.maximal.values()[i])
                    fail("|A_tau f| != M_lac f");
        }
        // budget identity, critical exponent and interpolation roots
        {
            DetRng rng(ctx.seed + 3);
            for (int i = 0; i < 100; ++i) {
                int d = 4 + static_cast<int>(rng.next_below(7));
                double beta = std::exp((rng.next_double() * 2 - 1) * 6.0);
                double fs = 1.0 + rng.next_double() * 1e6;
                auto [p1, p2] = ops::weak_type_budget(d, beta, fs);
                double target = std::pow(fs, static_cast<double>(d - 1) / (d + 1));
                if (std::abs(p1 - target) > 1e-12 * target || std::abs(p2 - target) > 1e-12 * target)
                    fail("budget pieces differ from |F|^{(d-1)/(d+1)}");
            }
            for (int d = 4; d <= 10; ++d)
                if (std::abs(ops::interp_exponent(d, ops::critical_p(d))) > 1e-12)
                    fail("interp exponent not zero at critical p");
            if (std::abs(ops::critical_p(4) - 5.0 / 3.0) > 1e-12) fail("critical_p(4) != 5/3");
        }
        c.finish(ok, detail);
    }

    // 10. Split experiment ------------------------------------------------------------------
    {
        Criterion c(10, "m1/m2 split experiment", 1200);
        harness::SplitRunParams p;  // 33^4 box, 10 draws, alphas {1,2,3}
        harness::SweepReport r = harness::run_split(ctx, p);
        double violation = r.summary["domination_max_violation"].get<double>();
        double tol = r.summary["quadrature_tolerance"].get<double>();
        double slope1 = r.summary["m1_trend"]["slope_fitted"].get<double>();
        double slope2 = r.summary["m2_trend"]["slope_fitted"].get<double>();
        bool ok = r.pass;
        c.finish(ok, fmt("violation %.2g (tol %.2g)", violation, tol) +
                         fmt(", trend slopes m1=%.3f m2=%.3f (targets 2, -0.5, +-0.5)", slope1, slope2));
    }

    std::printf("ACCEPTANCE: %d/10 criteria passed\n", 10 - failures);
    return failures;
}
