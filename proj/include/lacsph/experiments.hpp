#pragma once

// Experiment drivers shared by the CLI and the acceptance suite.  Each
// driver runs one named sweep, emits deterministic rows sorted by parameter
// tuple, fits the relevant slopes and records pass/fail flags in the report
// summary.

#include <cstdint>
#include <vector>

#include "lacsph/multiplier.hpp"
#include "lacsph/sweep.hpp"

namespace lacsph::harness {

struct RunContext {
    std::uint64_t seed = 1;
    int jobs = 1;
    long long cell_budget = 20000000;
    double tol = 1e-9;
    std::string config_hash = "0";
};

// exact exponent algebra: critical index, interpolation roots, level-set budget
SweepReport run_exponents(const RunContext& ctx);

struct CountParams {
    std::vector<int> dims = {4, 5};
    long long enum_check_max = 500;    // convolution count vs enumeration
    long long jacobi_check_max = 2000; // d = 4 only
    long long hl_lo = 100, hl_hi = 10000;
    double hl_slack = 0.15;
};
SweepReport run_count(const RunContext& ctx, const CountParams& p);

struct KloostermanRunParams {
    std::vector<int> dims = {4, 5};
    long long oracle_q_max = 24;
    int oracle_pairs = 20;
    long long oracle_lambda_max = 120;
    double oracle_tol = 1e-9;
    bool lemma_sweep = true;
    long long lemma_lo = 100, lemma_hi = 10000;
    double lemma_slack = 0.15;
    bool sup_sweep = false;
    long long sup_q_max = 50;
    long long sup_lambda_max = 199;
    int sup_l_samples = 128;
};
SweepReport run_kloosterman(const RunContext& ctx, const KloostermanRunParams& p);

struct RhoSumParams {
    std::vector<double> betas = {0.0, -1.5, -2.0};  // 0, -3/2, (1-d)/2 for d in {4,5}
    long long lambda_lo = 100, lambda_hi = 1000000;
    int grid_points = 40;
    double slack = 0.1;
};
SweepReport run_rho_sum(const RunContext& ctx, const RhoSumParams& p);

struct SurfaceDecayParams {
    std::vector<int> dims = {3, 4, 5};
    std::vector<long long> lambdas = {1, 4, 9};
    double r_lo = 1.0, r_hi = 100.0;
    int r_points = 30;
    int directions = 8;
    int crest_samples = 48;
    int identity_points = 50;
    double slack = 0.1;
};
SweepReport run_surface_decay(const RunContext& ctx, const SurfaceDecayParams& p);

struct ErrorDecayParams {
    int dim = 4;
    long long seed_radius = 1;
    long long lambda_max = 10000;
    double slack = 0.2;
    multiplier::SampleStrategy strategy;
    bool dyadic = false;        // sweep || sup_block |E| ||_2 for f = delta_0 instead
    int dyadic_margin = 8;
    multiplier::MultiplierOptions mopts;
};
SweepReport run_error_decay(const RunContext& ctx, const ErrorDecayParams& p);

struct SplitRunParams {
    int dim = 4;
    int box_side = 33;
    int f_count = 10;
    int f_size = 48;
    std::vector<double> alphas = {1.0, 2.0, 3.0};
    long long seq_seed = 1;
    int seq_len = 4;
    double trend_slack = 0.5;
    bool probe_quadrature = true;
    multiplier::MultiplierOptions mopts;
};
SweepReport run_split(const RunContext& ctx, const SplitRunParams& p);

struct WeakTypeParams {
    int dim = 4;
    int box_side = 33;
    int f_count = 10;
    int f_size = 64;
    long long seq_seed = 1;
    int seq_len = 4;
    double growth_limit = 1.5;
};
SweepReport run_weak_type(const RunContext& ctx, const WeakTypeParams& p);

}  // namespace lacsph::harness
