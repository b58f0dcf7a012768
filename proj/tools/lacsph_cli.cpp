// Command-line harness: one subcommand per experiment, CSV rows plus a JSON
// fit summary per run, deterministic under fixed (config, seed, jobs).
//
// Subcommands: count, kloosterman, rho-sum, surface-decay, error-decay,
// split, weak-type, exponents, fixtures.  Common flags: --config PATH (INI,
// CLI flags override file values), --seed N, --jobs N, --out DIR,
// --budget N, --tol X; every flag can also come from the environment with
// the LACSPH_ prefix.  Exit status 0 only when all asserted checks pass.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "lacsph/experiments.hpp"
#include "lacsph/expsum.hpp"
#include "lacsph/lattice.hpp"
#include "lacsph/multiplier.hpp"
#include "lacsph/sweep.hpp"

namespace {

namespace fs = std::filesystem;
using namespace lacsph;

struct CommonOpts {
    std::uint64_t seed = 1;
    int jobs = 0;  // 0 = all cores
    std::string out_dir = "out";
    long long budget = 20000000;
    double tol = 1e-9;
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "deterministic RNG seed, recorded in every output")
        ->envname("LACSPH_SEED");
    cmd->add_option("--jobs", c.jobs, "worker threads (0 = all cores)")->envname("LACSPH_JOBS");
    cmd->add_option("--out", c.out_dir, "output directory")->envname("LACSPH_OUT");
    cmd->add_option("--budget", c.budget, "grid cell budget for multiplier application")
        ->envname("LACSPH_BUDGET");
    cmd->add_option("--tol", c.tol, "comparison tolerance for oracle checks")->envname("LACSPH_TOL");
}

harness::RunContext make_context(const CommonOpts& c, const std::string& config_dump) {
    harness::RunContext ctx;
    ctx.seed = c.seed;
    ctx.jobs = c.jobs > 0 ? c.jobs : default_jobs();
    ctx.cell_budget = c.budget;
    ctx.tol = c.tol;
    ctx.config_hash = harness::fnv1a_hex(config_dump);
    return ctx;
}

int emit(const harness::SweepReport& report, const CommonOpts& c) {
    fs::create_directories(c.out_dir);
    fs::path csv = fs::path(c.out_dir) / (report.experiment + "_rows.csv");
    fs::path json = fs::path(c.out_dir) / (report.experiment + "_summary.json");
    {
        std::ofstream os(csv);
        harness::write_csv(os, report);
    }
    {
        std::ofstream os(json);
        harness::write_json(os, report);
    }
    std::cout << report.experiment << ": " << (report.pass ? "PASS" : "FAIL") << "  rows="
              << report.rows.size() << "  csv=" << csv.string() << "  summary=" << json.string()
              << "\n";
    for (auto it = report.summary.begin(); it != report.summary.end(); ++it) {
        if (it.value().is_object() && it.value().contains("slope_fitted")) {
            std::cout << "  " << it.key() << ": slope=" << it.value()["slope_fitted"]
                      << " predicted=" << it.value()["exponent_predicted"]
                      << " pass=" << it.value()["pass"] << "\n";
        }
    }
    return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lacsph: lattice-point, exponential-sum and multiplier experiments for "
                 "discrete lacunary spherical averaging operators"};
    app.set_config("--config", "", "INI config file; CLI flags override file values")
        ->envname("LACSPH_CONFIG");
    app.require_subcommand(1);

    CommonOpts common;
    int exit_code = 0;

    // count ---------------------------------------------------------------
    harness::CountParams count_params;
    std::string shell_csv;
    long long shell_lambda = 4;
    int shell_dim = 4;
    auto* cmd_count = app.add_subcommand(
        "count",
        "lattice point counts: convolution vs enumeration vs Jacobi, Hardy-Littlewood "
        "slope fit.  CSV columns: d,lambda,convolution,reference,reference_kind,equal");
    add_common(cmd_count, common);
    cmd_count->add_option("--enum-max", count_params.enum_check_max, "enumeration cross-check bound");
    cmd_count->add_option("--jacobi-max", count_params.jacobi_check_max, "Jacobi cross-check bound (d=4)");
    cmd_count->add_option("--hl-lo", count_params.hl_lo, "Hardy-Littlewood fit window start");
    cmd_count->add_option("--hl-hi", count_params.hl_hi, "Hardy-Littlewood fit window end");
    cmd_count->add_option("--shell-csv", shell_csv, "also write one sphere shell as CSV (fixture export)");
    cmd_count->add_option("--shell-d", shell_dim, "dimension for --shell-csv");
    cmd_count->add_option("--shell-lambda", shell_lambda, "radius squared for --shell-csv");
    cmd_count->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_count(ctx, count_params), common);
        if (!shell_csv.empty()) {
            std::ofstream os(shell_csv);
            lattice::write_shell_csv(os, lattice::enumerate_sphere(shell_dim, shell_lambda));
            std::cout << "shell csv written to " << shell_csv << "\n";
        }
    });

    // kloosterman -----------------------------------------------------------
    harness::KloostermanRunParams kl_params;
    auto* cmd_kl = app.add_subcommand(
        "kloosterman",
        "exponential sums: factored-vs-brute-force oracle, lemma q-sum sweep, optional "
        "sup-over-l ratio sweep.  CSV columns: kind,d,q,lambda,l_strategy,value,extra");
    add_common(cmd_kl, common);
    cmd_kl->add_option("--oracle-q-max", kl_params.oracle_q_max, "largest modulus for the oracle check");
    cmd_kl->add_option("--oracle-pairs", kl_params.oracle_pairs, "seeded (lambda,l) pairs per modulus");
    cmd_kl->add_flag("--sup-sweep", kl_params.sup_sweep, "also run the sup-over-l ratio sweep");
    cmd_kl->add_option("--lemma-lo", kl_params.lemma_lo, "lemma sweep lambda window start");
    cmd_kl->add_option("--lemma-hi", kl_params.lemma_hi, "lemma sweep lambda window end");
    cmd_kl->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_kloosterman(ctx, kl_params), common);
    });

    // rho-sum ---------------------------------------------------------------
    harness::RhoSumParams rho_params;
    auto* cmd_rho = app.add_subcommand(
        "rho-sum", "weighted sums q^beta rho(q,lambda)^{1/2} with log-log slope fits.  "
                   "CSV columns: beta,lambda,sum");
    add_common(cmd_rho, common);
    cmd_rho->add_option("--lambda-hi", rho_params.lambda_hi, "largest lambda");
    cmd_rho->add_option("--points", rho_params.grid_points, "log grid size");
    cmd_rho->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_rho_sum(ctx, rho_params), common);
    });

    // surface-decay -----------------------------------------------------------
    harness::SurfaceDecayParams surf_params;
    auto* cmd_surf = app.add_subcommand(
        "surface-decay",
        "surface-measure transform: closed-form identities and envelope decay fits.  "
        "CSV columns: d,lambda,r,envelope");
    add_common(cmd_surf, common);
    cmd_surf->add_option("--r-points", surf_params.r_points, "envelope radii count");
    cmd_surf->add_option("--directions", surf_params.directions, "directions sampled per radius");
    cmd_surf->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_surface_decay(ctx, surf_params), common);
    });

    // error-decay --------------------------------------------------------------
    harness::ErrorDecayParams err_params;
    bool literal_norm = false;
    auto* cmd_err = app.add_subcommand(
        "error-decay",
        "sampled sup of the error multiplier along a lacunary sequence, slope vs (3-d)/4. "
        " CSV columns: d,lambda,sup_sample,points,partial_singular_series "
        "(or d,Lambda,lambda_in_block,l2,grid_side with --dyadic)");
    add_common(cmd_err, common);
    cmd_err->add_option("--d", err_params.dim, "dimension");
    cmd_err->add_option("--lambda-max", err_params.lambda_max, "largest radius");
    cmd_err->add_option("--seq-seed", err_params.seed_radius, "first radius of the lacunary sequence");
    cmd_err->add_option("--grid-res", err_params.strategy.grid_resolution, "uniform sample grid per dim");
    cmd_err->add_option("--random-points", err_params.strategy.random_points, "random sample count");
    cmd_err->add_flag("--dyadic", err_params.dyadic, "sweep ||sup_block |E f|||_2 for f = delta instead");
    cmd_err->add_flag("--literal-normalization", literal_norm,
                      "use the raw main-term scaling instead of mass matching");
    cmd_err->callback([&] {
        if (literal_norm) err_params.mopts.norm = multiplier::Normalization::Literal;
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_error_decay(ctx, err_params), common);
    });

    // split ----------------------------------------------------------------------
    harness::SplitRunParams split_params;
    auto* cmd_split = app.add_subcommand(
        "split",
        "M1/M2 decomposition of the linearized maximal operator on random indicator sets: "
        "piece norms, domination check, ratio trends vs alpha.  CSV columns: draw,alpha,"
        "f_l1,m11_l1,m12_l1,m21_l2,m22_l2,m23_l2,m1_l1,m1_l101,m2_l2,ratio_m1_l1,"
        "ratio_m1_l101,ratio_m2_l2,domination_violation,completeness_residual");
    add_common(cmd_split, common);
    cmd_split->add_option("--box", split_params.box_side, "indicator box side");
    cmd_split->add_option("--draws", split_params.f_count, "number of random indicator sets");
    cmd_split->add_option("--f-size", split_params.f_size, "points per indicator set");
    cmd_split->add_option("--alphas", split_params.alphas, "alpha grid");
    cmd_split->add_flag("!--no-probe", split_params.probe_quadrature,
                        "skip the grid-refinement quadrature probe");
    cmd_split->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_split(ctx, split_params), common);
    });

    // weak-type ---------------------------------------------------------------------
    harness::WeakTypeParams wt_params;
    auto* cmd_wt = app.add_subcommand(
        "weak-type",
        "restricted weak-type ratio sweep over random indicator sets, with box doubling.  "
        "CSV columns: box_side,draw,f_size,max_ratio");
    add_common(cmd_wt, common);
    cmd_wt->add_option("--box", wt_params.box_side, "indicator box side");
    cmd_wt->add_option("--draws", wt_params.f_count, "number of random indicator sets");
    cmd_wt->add_option("--f-size", wt_params.f_size, "points per indicator set");
    cmd_wt->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_weak_type(ctx, wt_params), common);
    });

    // exponents -----------------------------------------------------------------------
    auto* cmd_exp = app.add_subcommand(
        "exponents", "exact exponent algebra: critical index, interpolation roots, level-set "
                     "budget identity.  CSV columns: d,critical_p,interp_at_critical,"
                     "interp_at_2_minus_l2_endpoint,budget_max_rel_dev");
    add_common(cmd_exp, common);
    cmd_exp->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        exit_code = emit(harness::run_exponents(ctx), common);
    });

    // fixtures ------------------------------------------------------------------------
    std::string fixture_file = "out/fixtures.json";
    bool fixtures_refreeze = false;
    auto* cmd_fx = app.add_subcommand(
        "fixtures", "freeze or verify the built-in numeric fixtures (first run records, later "
                    "runs compare bit-exact stored values within --tol)");
    add_common(cmd_fx, common);
    cmd_fx->add_option("--file", fixture_file, "fixture store path");
    cmd_fx->add_flag("--refreeze", fixtures_refreeze, "overwrite stored values with fresh ones");
    cmd_fx->callback([&] {
        auto ctx = make_context(common, app.config_to_str());
        harness::FixtureStore store(fixture_file);
        multiplier::MultiplierContext mctx(4, 7);
        multiplier::SampleStrategy strategy;
        strategy.seed = ctx.seed;
        double sup47 = multiplier::error_sup_sample(mctx, strategy, ctx.jobs).value;
        std::vector<long long> zero4(4, 0);
        double k130 = expsum::kloosterman_factored(4, 1, 3, zero4).real();
        struct Item { const char* name; double value; };
        Item items[] = {{"error_sup_sample_d4_lambda7", sup47},
                        {"kloosterman_d4_lambda1_q3_l0_re", k130},
                        {"count_d4_lambda4", static_cast<double>(lattice::count_representations(4, 4))}};
        bool pass = true;
        for (const Item& item : items) {
            if (fixtures_refreeze) store.freeze(item.name, item.value);
            auto check = store.check_or_freeze(item.name, item.value, ctx.tol);
            pass = pass && check.pass;
            std::cout << (check.pass ? "PASS " : "FAIL ") << item.name << " value=" << item.value
                      << " stored=" << check.stored << " delta=" << check.delta << "\n";
        }
        store.save();
        exit_code = pass ? 0 : 1;
    });

    CLI11_PARSE(app, argc, argv);
    return exit_code;
}
