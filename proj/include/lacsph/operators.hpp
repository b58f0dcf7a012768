#pragma once

// Spatial-side operators: exact spherical averages on Z^d (zero-extension
// convolution with the enumerated shell), the lacunary maximal function and
// its stopping-time linearization, multiplier application on periodized
// grids, the M1/M2 decomposition of the linearized operator, dyadic error
// blocks, norms, level sets, and the exponent algebra of the restricted
// weak-type argument.

#include <map>
#include <memory>
#include <span>
#include <utility>

#include "lacsph/grid.hpp"
#include "lacsph/lattice.hpp"
#include "lacsph/multiplier.hpp"

namespace lacsph::ops {

// A_lambda f(n) = N(lambda)^{-1} sum_{|m|^2=lambda} f(n-m), exact on Z^d;
// the output box is enlarged by ceil(sqrt(lambda)) per side.
GridFunction spherical_average(const GridFunction& f, long long lambda);

// sup_j |A_{lambda_j} f| pointwise on the box enlarged for the largest radius.
GridFunction lacunary_maximal(const GridFunction& f, const lattice::LacunarySequence& seq);

// tau(n) = smallest index attaining the maximum, so that |A_tau f| equals
// the maximal function exactly.
struct StoppingTime {
    int dim = 0;
    int side = 0;
    std::vector<std::int32_t> index;  // 0-based index into seq.radii
};

struct Linearization {
    StoppingTime tau;
    GridFunction a_tau;    // signed values A_{tau(n)} f(n)
    GridFunction maximal;  // |A_tau f| = sup_j |A_j f|
};

Linearization stopping_time_linearize(const GridFunction& f, const lattice::LacunarySequence& seq);

// --- multiplier application --------------------------------------------------

enum class Piece { Discrete, FullMain, QSlice, Low, High, Error };

struct PieceSpec {
    Piece piece = Piece::Discrete;
    long long q = 1;        // for QSlice / Low / High
    double alpha = 1.0;     // for Low / High
    long long q_max = 0;    // for FullMain; 0 = floor(sqrt(lambda))
};

struct ApplyInfo {
    int side = 0;
    double max_imag = 0.0;  // residual imaginary part of the inverse transform
};

// Smallest grid side that keeps the compactly supported pieces alias-free:
// twice (support radius + ceil(sqrt(lambda))) plus one, odd.
int minimal_grid_side(const GridFunction& f, long long lambda_max);

// Evaluates the selected multiplier piece on the side^d frequency grid,
// multiplies the trigonometric-polynomial transform of f and inverts.
// Exact for Piece::Discrete when the grid side is at least minimal;
// pieces built from the surface measure carry a periodization error that
// decreases with the grid side (see SplitEngine::kernel_refinement_error).
GridFunction apply_multiplier(const GridFunction& f, multiplier::MultiplierContext& ctx,
                              const PieceSpec& spec, int grid_side, long long cell_budget,
                              int jobs, ApplyInfo* info = nullptr);

// --- M1/M2 decomposition ------------------------------------------------------

struct SplitOptions {
    int grid_side = 0;               // 0 = minimal for the largest radius
    int grid_margin = 0;             // extra cells per side on top of minimal
    long long cell_budget = 20000000;
    int jobs = 1;
    multiplier::MultiplierOptions mopts;
};

struct SplitNorms {
    double alpha = 1.0;
    double m11_l1 = 0, m12_l1 = 0;
    double m21_l2 = 0, m22_l2 = 0, m23_l2 = 0;
    double m1_l1 = 0, m1_l101 = 0;   // l^1 and l^1.01 of M1 = M11 + M12
    double m2_l2 = 0;                // l^2 of M2 = M21 + M22 + M23
    double a_tau_l1 = 0;
    double domination_violation = 0;   // max positive part of |A_tau f| - (M1 + M2)
    double completeness_residual = 0;  // max |A_tau f - signed reassembly|
};

struct SplitPieces {
    GridFunction m11, m12, m21, m22, m23, m1, m2, a_tau;
    SplitNorms norms;
};

struct SplitOutput {
    std::vector<SplitNorms> per_alpha;
    double f_l1 = 0;
    double max_imag = 0;
};

// Shared machinery for the decomposition
//   A_tau f = M11 + [E_tau + sum_{q<=alpha} low_q + sum_{q<=alpha} high_q
//                     + sum_{alpha<q} slice_q]   (on tau-points with sqrt(lambda) > alpha)
// with multiplier spectra cached across calls, so sweeping many indicator
// sets and alpha values reuses the expensive grids.  Points whose stopping
// radius satisfies sqrt(lambda) <= alpha contribute only M11 and M21.
class SplitEngine {
  public:
    SplitEngine(int dim, lattice::LacunarySequence seq, int grid_side, SplitOptions opts);

    int grid_side() const { return side_; }
    const lattice::LacunarySequence& sequence() const { return seq_; }

    SplitOutput run(const GridFunction& indicator, std::span<const double> alphas,
                    std::vector<SplitPieces>* materialize = nullptr);

    // Max over radii of the grid-refinement change of the main and low
    // kernels (evaluated at ~1.5x the side); multiplied by |F| this bounds
    // the periodization error of the grid-computed pieces for f = 1_F.
    double kernel_refinement_error(std::span<const double> alphas);

  private:
    const ComplexGrid& slice_spectrum(std::size_t j, long long q);
    ComplexGrid make_slice_spectrum(std::size_t j, long long q, int side);
    const ComplexGrid& lowsum_spectrum(std::size_t j, double alpha);
    ComplexGrid make_lowsum_spectrum(std::size_t j, double alpha, int side);

    int dim_;
    lattice::LacunarySequence seq_;
    int side_;
    SplitOptions opts_;
    std::vector<std::unique_ptr<multiplier::MultiplierContext>> contexts_;
    std::map<std::pair<std::size_t, long long>, ComplexGrid> slice_cache_;
    std::map<std::pair<std::size_t, long long>, ComplexGrid> lowsum_cache_;  // alpha keyed by round(alpha*64)
    double refinement_error_ = -1.0;
};

// Single-alpha convenience wrapper returning the materialized pieces.
SplitPieces m1_m2_split(const GridFunction& indicator, const lattice::LacunarySequence& seq,
                        double alpha, const SplitOptions& opts = {});

// --- dyadic error block -------------------------------------------------------

struct DyadicErrorResult {
    double l2 = 0;
    std::vector<long long> radii;  // radii of the sequence inside [Lambda, 2 Lambda)
    int grid_side = 0;
};

// l^2 norm over the grid of the pointwise sup of |E_lambda f| across an
// explicit radius list.
double error_block_sup_l2(const GridFunction& f, std::span<const long long> radii,
                          const SplitOptions& opts, int* side_out = nullptr);

// l^2 norm of the pointwise sup of |E_{lambda_j} f| over lambda_j in
// [Lambda, 2 Lambda).  A lacunary sequence puts at most one radius in the
// block; the operation asserts that and records what it found.
DyadicErrorResult dyadic_error_sup(const GridFunction& f, const lattice::LacunarySequence& seq,
                                   long long Lambda, const SplitOptions& opts);

// --- norms and exponent algebra ------------------------------------------------

// p >= 1, or p = infinity for the sup norm.
double lp_norm(const GridFunction& f, double p);

// |{n : f(n) > beta}| (counting measure).
long long distribution_level(const GridFunction& f, double beta);

// beta |{M_lac 1_F > beta}|^{(d-1)/(d+1)} / |F|^{(d-1)/(d+1)}.
double weak_type_ratio(const GridFunction& indicator, const lattice::LacunarySequence& seq,
                       double beta);

// Max of the ratio over the level values of the maximal function.
double weak_type_max_ratio(const GridFunction& indicator, const lattice::LacunarySequence& seq);

// The two terms of the optimized level-set budget at alpha = beta^{-1/(d-1)}:
//   beta^{2/(d+1)} (alpha^2 |F|)^{(d-1)/(d+1)}   and
//   beta^{-(d-3)/(d+1)} alpha^{-(d-3)(d-1)/(d+1)} |F|^{(d-1)/(d+1)};
// both collapse to |F|^{(d-1)/(d+1)} identically.
std::pair<double, double> weak_type_budget(int d, double beta, double f_size);

// Interpolation exponent (3-d)/2 * (2 - 2/p) + 2 (2/p - 1); its root in p
// is the critical index (d+1)/(d-1).
double interp_exponent(int d, double p);
double critical_p(int d);

}  // namespace lacsph::ops
