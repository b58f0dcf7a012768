#include "lacsph/operators.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "lacsph/expsum.hpp"

namespace lacsph::ops {

namespace {

long long ceil_sqrt(long long n) {
    long long r = expsum::isqrt(n);
    return r * r == n ? r : r + 1;
}

void check_cells(int dim, int side, long long budget) {
    double cells = 1.0;
    for (int i = 0; i < dim; ++i) cells *= side;
    if (cells > static_cast<double>(budget))
        throw resource_error("grid of " + std::to_string(side) + "^" + std::to_string(dim) +
                             " cells exceeds the cell budget " + std::to_string(budget));
}

int next_odd(int n) { return n % 2 == 0 ? n + 1 : n; }

// signed coordinates of every cell of a side^dim box, iterated flat
template <typename Fn>
void for_each_cell(int dim, int side, Fn&& fn) {
    std::array<int, 8> n{};
    int h = (side - 1) / 2;
    for (int i = 0; i < dim; ++i) n[static_cast<std::size_t>(i)] = -h;
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(side);
    for (std::size_t flat = 0; flat < total; ++flat) {
        fn(flat, std::span<const int>(n.data(), static_cast<std::size_t>(dim)));
        for (int i = dim - 1; i >= 0; --i) {
            if (++n[static_cast<std::size_t>(i)] <= h) break;
            n[static_cast<std::size_t>(i)] = -h;
        }
    }
}

cplx eval_piece(multiplier::MultiplierContext& ctx, const PieceSpec& spec,
                std::span<const double> xi) {
    switch (spec.piece) {
        case Piece::Discrete: return ctx.discrete(xi);
        case Piece::FullMain: return ctx.main_term(xi, spec.q_max > 0 ? spec.q_max : ctx.q_max_full());
        case Piece::QSlice: return ctx.q_slice(xi, spec.q);
        case Piece::Low: return ctx.low_piece(xi, spec.q, spec.alpha);
        case Piece::High: return ctx.high_piece(xi, spec.q, spec.alpha);
        case Piece::Error: return ctx.error(xi);
    }
    throw std::logic_error("eval_piece: unknown piece");
}

ComplexGrid eval_spectrum(multiplier::MultiplierContext& ctx, const PieceSpec& spec, int dim,
                          int side, int jobs) {
    ComplexGrid out(dim, side);
    std::size_t total = out.size();
    parallel_for(total, jobs, [&](std::size_t flat) {
        std::array<double, 8> xi{};
        std::size_t rem = flat;
        for (int i = dim - 1; i >= 0; --i) {
            int k = static_cast<int>(rem % static_cast<std::size_t>(side));
            rem /= static_cast<std::size_t>(side);
            if (k > side / 2) k -= side;
            xi[static_cast<std::size_t>(i)] = static_cast<double>(k) / side;
        }
        out.v[flat] = eval_piece(ctx, spec, std::span<const double>(xi.data(), static_cast<std::size_t>(dim)));
    });
    return out;
}

// inverse transform of spectrum .* fhat; returns the real part, records the
// residual imaginary part
std::vector<double> apply_spectrum(const ComplexGrid& spectrum, const ComplexGrid& fhat,
                                   int jobs, double* max_imag) {
    ComplexGrid work = spectrum;
    for (std::size_t i = 0; i < work.size(); ++i) work.v[i] *= fhat.v[i];
    dft(work, +1, jobs);
    std::vector<double> out(work.size());
    double mi = 0.0;
    for (std::size_t i = 0; i < work.size(); ++i) {
        out[i] = work.v[i].real();
        mi = std::max(mi, std::abs(work.v[i].imag()));
    }
    if (max_imag) *max_imag = std::max(*max_imag, mi);
    return out;
}

}  // namespace

GridFunction spherical_average(const GridFunction& f, long long lambda) {
    lattice::SphereShell shell = lattice::enumerate_sphere(f.dim(), lambda);
    const double inv_n = 1.0 / static_cast<double>(shell.count());
    GridFunction out(f.dim(), f.side() + 2 * static_cast<int>(ceil_sqrt(lambda)));
    const int d = f.dim();
    std::array<int, 8> n{}, t{};
    std::span<int> ns(n.data(), static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = f.values()[i];
        if (v == 0.0) continue;
        f.coords_of(i, ns);
        double w = v * inv_n;
        for (std::size_t p = 0; p < shell.count(); ++p) {
            const std::int32_t* m = shell.point(p);
            for (int c = 0; c < d; ++c) t[static_cast<std::size_t>(c)] = n[static_cast<std::size_t>(c)] + m[c];
            out.at(std::span<const int>(t.data(), static_cast<std::size_t>(d))) += w;
        }
    }
    return out;
}

GridFunction lacunary_maximal(const GridFunction& f, const lattice::LacunarySequence& seq) {
    return stopping_time_linearize(f, seq).maximal;
}

Linearization stopping_time_linearize(const GridFunction& f, const lattice::LacunarySequence& seq) {
    if (seq.radii.empty()) throw std::invalid_argument("stopping_time_linearize: empty sequence");
    if (seq.dim != f.dim()) throw std::invalid_argument("stopping_time_linearize: dimension mismatch");
    seq.validate();
    int side = f.side() + 2 * static_cast<int>(ceil_sqrt(seq.radii.back()));
    std::vector<GridFunction> averages;
    averages.reserve(seq.radii.size());
    for (long long lambda : seq.radii) averages.push_back(spherical_average(f, lambda));

    Linearization lin;
    lin.tau.dim = f.dim();
    lin.tau.side = side;
    lin.a_tau = GridFunction(f.dim(), side);
    lin.maximal = GridFunction(f.dim(), side);
    lin.tau.index.assign(lin.a_tau.size(), 0);
    for_each_cell(f.dim(), side, [&](std::size_t flat, std::span<const int> n) {
        int best = 0;
        double best_signed = averages[0].value_or_zero(n);
        double best_abs = std::abs(best_signed);
        for (std::size_t j = 1; j < averages.size(); ++j) {
            double v = averages[j].value_or_zero(n);
            if (std::abs(v) > best_abs) {
                best = static_cast<int>(j);
                best_signed = v;
                best_abs = std::abs(v);
            }
        }
        lin.tau.index[flat] = best;
        lin.a_tau.values()[flat] = best_signed;
        lin.maximal.values()[flat] = best_abs;
    });
    return lin;
}

int minimal_grid_side(const GridFunction& f, long long lambda_max) {
    int supp = std::max(0, f.support_radius());
    return 2 * (supp + static_cast<int>(ceil_sqrt(lambda_max))) + 1;
}

GridFunction apply_multiplier(const GridFunction& f, multiplier::MultiplierContext& ctx,
                              const PieceSpec& spec, int grid_side, long long cell_budget,
                              int jobs, ApplyInfo* info) {
    if (f.dim() != ctx.dim()) throw std::invalid_argument("apply_multiplier: dimension mismatch");
    int required = minimal_grid_side(f, ctx.lambda());
    int side = grid_side > 0 ? grid_side : required;
    if (side < required)
        throw std::invalid_argument("apply_multiplier: grid side " + std::to_string(side) +
                                    " below the alias-free minimum " + std::to_string(required));
    if (side % 2 == 0) throw std::invalid_argument("apply_multiplier: grid side must be odd");
    check_cells(f.dim(), side, cell_budget);

    ComplexGrid fhat = embed_periodic(f, side);
    dft(fhat, -1, jobs);
    ComplexGrid spectrum = eval_spectrum(ctx, spec, f.dim(), side, jobs);
    double max_imag = 0.0;
    std::vector<double> spatial = apply_spectrum(spectrum, fhat, jobs, &max_imag);

    GridFunction out(f.dim(), side);
    // spatial index (n mod side) lines up with the box cell n for odd side
    for_each_cell(f.dim(), side, [&](std::size_t flat, std::span<const int> n) {
        std::size_t idx = 0;
        for (int c = 0; c < f.dim(); ++c) {
            int m = n[static_cast<std::size_t>(c)] % side;
            if (m < 0) m += side;
            idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(m);
        }
        out.values()[flat] = spatial[idx];
    });
    if (info) {
        info->side = side;
        info->max_imag = max_imag;
    }
    return out;
}

// --- SplitEngine ---------------------------------------------------------------

SplitEngine::SplitEngine(int dim, lattice::LacunarySequence seq, int grid_side, SplitOptions opts)
    : dim_(dim), seq_(std::move(seq)), side_(grid_side), opts_(opts) {
    if (seq_.radii.empty()) throw std::invalid_argument("SplitEngine: empty sequence");
    seq_.validate();
    if (side_ % 2 == 0) throw std::invalid_argument("SplitEngine: grid side must be odd");
    check_cells(dim_, side_, opts_.cell_budget);
    contexts_.reserve(seq_.radii.size());
    for (long long lambda : seq_.radii)
        contexts_.push_back(std::make_unique<multiplier::MultiplierContext>(dim_, lambda, opts_.mopts));
}

ComplexGrid SplitEngine::make_slice_spectrum(std::size_t j, long long q, int side) {
    PieceSpec spec;
    spec.piece = Piece::QSlice;
    spec.q = q;
    return eval_spectrum(*contexts_[j], spec, dim_, side, opts_.jobs);
}

const ComplexGrid& SplitEngine::slice_spectrum(std::size_t j, long long q) {
    auto key = std::make_pair(j, q);
    auto it = slice_cache_.find(key);
    if (it == slice_cache_.end())
        it = slice_cache_.emplace(key, make_slice_spectrum(j, q, side_)).first;
    return it->second;
}

ComplexGrid SplitEngine::make_lowsum_spectrum(std::size_t j, double alpha, int side) {
    multiplier::MultiplierContext& ctx = *contexts_[j];
    long long q_hi = std::min<long long>(static_cast<long long>(std::floor(alpha)), ctx.q_max_full());
    ComplexGrid acc(dim_, side);
    for (long long q = 1; q <= q_hi; ++q) {
        PieceSpec spec;
        spec.piece = Piece::Low;
        spec.q = q;
        spec.alpha = alpha;
        ComplexGrid one = eval_spectrum(ctx, spec, dim_, side, opts_.jobs);
        for (std::size_t i = 0; i < acc.size(); ++i) acc.v[i] += one.v[i];
    }
    return acc;
}

const ComplexGrid& SplitEngine::lowsum_spectrum(std::size_t j, double alpha) {
    auto key = std::make_pair(j, static_cast<long long>(std::lround(alpha * 64)));
    auto it = lowsum_cache_.find(key);
    if (it == lowsum_cache_.end())
        it = lowsum_cache_.emplace(key, make_lowsum_spectrum(j, alpha, side_)).first;
    return it->second;
}

SplitOutput SplitEngine::run(const GridFunction& indicator, std::span<const double> alphas,
                             std::vector<SplitPieces>* materialize) {
    if (indicator.dim() != dim_) throw std::invalid_argument("SplitEngine::run: dimension mismatch");
    for (double v : indicator.values())
        if (v != 0.0 && v != 1.0)
            throw std::invalid_argument("SplitEngine::run: input must be an indicator function");
    for (double a : alphas)
        if (a < 1.0) throw std::invalid_argument("SplitEngine::run: alpha must be >= 1");
    int required = minimal_grid_side(indicator, seq_.radii.back());
    if (side_ < required)
        throw std::invalid_argument("SplitEngine::run: grid side below alias-free minimum " +
                                    std::to_string(required));

    const std::size_t cells = static_cast<std::size_t>(std::llround(std::pow(side_, dim_)));
    const std::size_t n_alpha = alphas.size();

    Linearization lin = stopping_time_linearize(indicator, seq_);
    // flatten tau and A_tau onto the engine grid (box order), and build the
    // box-to-periodic index map used to read the inverse-transform arrays
    std::vector<std::int32_t> tau(cells, 0);
    std::vector<double> a_tau(cells, 0.0);
    std::vector<std::size_t> periodic(cells, 0);
    for_each_cell(dim_, side_, [&](std::size_t flat, std::span<const int> n) {
        int h = (lin.tau.side - 1) / 2;
        bool inside = true;
        std::size_t pidx = 0;
        for (int c = 0; c < dim_; ++c) {
            int v = n[static_cast<std::size_t>(c)];
            if (std::abs(v) > h) inside = false;
            int m = v % side_;
            if (m < 0) m += side_;
            pidx = pidx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(m);
        }
        periodic[flat] = pidx;
        if (inside) {
            std::size_t idx = lin.a_tau.flat_index(n);
            tau[flat] = lin.tau.index[idx];
            a_tau[flat] = lin.a_tau.values()[idx];
        }
    });

    ComplexGrid fhat = embed_periodic(indicator, side_);
    dft(fhat, -1, opts_.jobs);

    SplitOutput out;
    out.per_alpha.assign(n_alpha, SplitNorms{});
    for (std::size_t ai = 0; ai < n_alpha; ++ai) out.per_alpha[ai].alpha = alphas[ai];
    for (double v : indicator.values()) out.f_l1 += std::abs(v);

    if (materialize) {
        materialize->clear();
        materialize->resize(n_alpha);
        for (std::size_t ai = 0; ai < n_alpha; ++ai) {
            SplitPieces& p = (*materialize)[ai];
            p.m11 = GridFunction(dim_, side_);
            p.m12 = GridFunction(dim_, side_);
            p.m21 = GridFunction(dim_, side_);
            p.m22 = GridFunction(dim_, side_);
            p.m23 = GridFunction(dim_, side_);
            p.m1 = GridFunction(dim_, side_);
            p.m2 = GridFunction(dim_, side_);
            p.a_tau = GridFunction(dim_, side_);
        }
    }

    std::vector<double> accum_m1_l101(n_alpha, 0.0), accum_m2_l2sq(n_alpha, 0.0);
    std::vector<double> accum_m21_l2sq(n_alpha, 0.0), accum_m22_l2sq(n_alpha, 0.0),
        accum_m23_l2sq(n_alpha, 0.0);

    for (std::size_t j = 0; j < seq_.radii.size(); ++j) {
        const long long lambda = seq_.radii[j];
        const double sqrt_lambda = std::sqrt(static_cast<double>(lambda));
        const long long q_max = contexts_[j]->q_max_full();

        // spatial slices for this radius
        std::vector<std::vector<double>> slice(static_cast<std::size_t>(q_max));
        for (long long q = 1; q <= q_max; ++q)
            slice[static_cast<std::size_t>(q - 1)] =
                apply_spectrum(slice_spectrum(j, q), fhat, opts_.jobs, &out.max_imag);

        // exact average for this radius, on the engine grid
        GridFunction a_exact = spherical_average(indicator, lambda);
        std::vector<double> a_j(cells, 0.0);
        for_each_cell(dim_, side_, [&](std::size_t flat, std::span<const int> n) {
            a_j[flat] = a_exact.value_or_zero(n);
        });

        // low sums per alpha (only needed where the split applies)
        std::vector<std::vector<double>> low(n_alpha);
        for (std::size_t ai = 0; ai < n_alpha; ++ai)
            if (sqrt_lambda > alphas[ai])
                low[ai] = apply_spectrum(lowsum_spectrum(j, alphas[ai]), fhat, opts_.jobs, &out.max_imag);

        for (std::size_t flat = 0; flat < cells; ++flat) {
            if (tau[flat] != static_cast<std::int32_t>(j)) continue;
            const std::size_t pidx = periodic[flat];
            double atau = a_tau[flat];
            double aabs = std::abs(atau);
            double slice_total = 0.0;
            for (long long q = 1; q <= q_max; ++q) slice_total += slice[static_cast<std::size_t>(q - 1)][pidx];
            double err_j = a_j[flat] - slice_total;  // E_lambda_j f at this point
            for (std::size_t ai = 0; ai < n_alpha; ++ai) {
                SplitNorms& norms = out.per_alpha[ai];
                double alpha = alphas[ai];
                double m11 = 0, m12 = 0, m22 = 0, m23 = 0;
                double m21 = std::abs(err_j);
                double reassembly;
                if (sqrt_lambda <= alpha) {
                    m11 = aabs;
                    reassembly = atau;
                } else {
                    double low_v = low[ai][pidx];
                    double cum_alpha = 0.0;
                    long long q_alpha = std::min<long long>(static_cast<long long>(std::floor(alpha)), q_max);
                    for (long long q = 1; q <= q_alpha; ++q) cum_alpha += slice[static_cast<std::size_t>(q - 1)][pidx];
                    m12 = std::abs(low_v);
                    m23 = std::abs(cum_alpha - low_v);
                    for (long long q = q_alpha + 1; q <= q_max; ++q)
                        m22 += std::abs(slice[static_cast<std::size_t>(q - 1)][pidx]);
                    reassembly = err_j + slice_total;
                }
                double m1 = m11 + m12;
                double m2 = m21 + m22 + m23;
                norms.m11_l1 += m11;
                norms.m12_l1 += m12;
                accum_m21_l2sq[ai] += m21 * m21;
                accum_m22_l2sq[ai] += m22 * m22;
                accum_m23_l2sq[ai] += m23 * m23;
                norms.m1_l1 += m1;
                accum_m1_l101[ai] += std::pow(m1, 1.01);
                accum_m2_l2sq[ai] += m2 * m2;
                norms.a_tau_l1 += aabs;
                norms.domination_violation = std::max(norms.domination_violation, aabs - (m1 + m2));
                norms.completeness_residual =
                    std::max(norms.completeness_residual, std::abs(atau - reassembly));
                if (materialize) {
                    SplitPieces& p = (*materialize)[ai];
                    p.m11.values()[flat] = m11;
                    p.m12.values()[flat] = m12;
                    p.m21.values()[flat] = m21;
                    p.m22.values()[flat] = m22;
                    p.m23.values()[flat] = m23;
                    p.m1.values()[flat] = m1;
                    p.m2.values()[flat] = m2;
                    p.a_tau.values()[flat] = atau;
                }
            }
        }
    }

    for (std::size_t ai = 0; ai < n_alpha; ++ai) {
        SplitNorms& norms = out.per_alpha[ai];
        norms.m21_l2 = std::sqrt(accum_m21_l2sq[ai]);
        norms.m22_l2 = std::sqrt(accum_m22_l2sq[ai]);
        norms.m23_l2 = std::sqrt(accum_m23_l2sq[ai]);
        norms.m1_l101 = std::pow(accum_m1_l101[ai], 1.0 / 1.01);
        norms.m2_l2 = std::sqrt(accum_m2_l2sq[ai]);
        if (materialize) (*materialize)[ai].norms = norms;
    }
    return out;
}

double SplitEngine::kernel_refinement_error(std::span<const double> alphas) {
    if (refinement_error_ >= 0.0) return refinement_error_;
    int side_ref = next_odd(side_ + side_ / 2);
    double worst = 0.0;
    const int h = (side_ - 1) / 2;
    auto compare = [&](const ComplexGrid& coarse_spec, const ComplexGrid& fine_spec) {
        ComplexGrid coarse = coarse_spec;
        ComplexGrid fine = fine_spec;
        dft(coarse, +1, opts_.jobs);
        dft(fine, +1, opts_.jobs);
        // compare kernels on the coarse box
        double diff = 0.0;
        for_each_cell(dim_, side_, [&](std::size_t, std::span<const int> n) {
            bool small = true;
            for (int c = 0; c < dim_; ++c)
                if (std::abs(n[static_cast<std::size_t>(c)]) > h) small = false;
            if (!small) return;
            std::size_t ic = 0, iff = 0;
            for (int c = 0; c < dim_; ++c) {
                int mc = n[static_cast<std::size_t>(c)] % side_;
                if (mc < 0) mc += side_;
                ic = ic * static_cast<std::size_t>(side_) + static_cast<std::size_t>(mc);
                int mf = n[static_cast<std::size_t>(c)] % side_ref;
                if (mf < 0) mf += side_ref;
                iff = iff * static_cast<std::size_t>(side_ref) + static_cast<std::size_t>(mf);
            }
            diff = std::max(diff, std::abs(coarse.v[ic] - fine.v[iff]));
        });
        return diff;
    };
    for (std::size_t j = 0; j < seq_.radii.size(); ++j) {
        long long q_max = contexts_[j]->q_max_full();
        // main kernel = sum of slices
        ComplexGrid main_coarse(dim_, side_), main_fine(dim_, side_ref);
        for (long long q = 1; q <= q_max; ++q) {
            const ComplexGrid& sc = slice_spectrum(j, q);
            ComplexGrid sf = make_slice_spectrum(j, q, side_ref);
            for (std::size_t i = 0; i < main_coarse.size(); ++i) main_coarse.v[i] += sc.v[i];
            for (std::size_t i = 0; i < main_fine.size(); ++i) main_fine.v[i] += sf.v[i];
        }
        worst = std::max(worst, compare(main_coarse, main_fine));
        for (double alpha : alphas) {
            if (std::sqrt(static_cast<double>(seq_.radii[j])) <= alpha) continue;
            worst = std::max(worst, compare(lowsum_spectrum(j, alpha),
                                            make_lowsum_spectrum(j, alpha, side_ref)));
        }
    }
    refinement_error_ = worst;
    return worst;
}

SplitPieces m1_m2_split(const GridFunction& indicator, const lattice::LacunarySequence& seq,
                        double alpha, const SplitOptions& opts) {
    int side = opts.grid_side > 0
                   ? opts.grid_side
                   : next_odd(minimal_grid_side(indicator, seq.radii.back()) + 2 * opts.grid_margin);
    SplitEngine engine(indicator.dim(), seq, side, opts);
    std::vector<SplitPieces> mat;
    double alphas[1] = {alpha};
    engine.run(indicator, alphas, &mat);
    return std::move(mat[0]);
}

double error_block_sup_l2(const GridFunction& f, std::span<const long long> radii,
                          const SplitOptions& opts, int* side_out) {
    if (radii.empty()) return 0.0;
    long long lambda_max = *std::max_element(radii.begin(), radii.end());
    int side = opts.grid_side > 0
                   ? opts.grid_side
                   : next_odd(minimal_grid_side(f, lambda_max) + 2 * opts.grid_margin);
    check_cells(f.dim(), side, opts.cell_budget);
    if (side_out) *side_out = side;

    ComplexGrid fhat = embed_periodic(f, side);
    dft(fhat, -1, opts.jobs);

    std::size_t cells = fhat.size();
    std::vector<double> sup(cells, 0.0);
    for (long long lambda : radii) {
        multiplier::MultiplierContext ctx(f.dim(), lambda, opts.mopts);
        PieceSpec spec;
        spec.piece = Piece::FullMain;
        ComplexGrid spectrum = eval_spectrum(ctx, spec, f.dim(), side, opts.jobs);
        double max_imag = 0.0;
        std::vector<double> main_spatial = apply_spectrum(spectrum, fhat, opts.jobs, &max_imag);
        GridFunction a_exact = spherical_average(f, lambda);
        for_each_cell(f.dim(), side, [&](std::size_t, std::span<const int> n) {
            std::size_t idx = 0;
            for (int c = 0; c < f.dim(); ++c) {
                int m = n[static_cast<std::size_t>(c)] % side;
                if (m < 0) m += side;
                idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(m);
            }
            double e = std::abs(a_exact.value_or_zero(n) - main_spatial[idx]);
            sup[idx] = std::max(sup[idx], e);
        });
    }
    double acc = 0.0;
    for (double v : sup) acc += v * v;
    return std::sqrt(acc);
}

DyadicErrorResult dyadic_error_sup(const GridFunction& f, const lattice::LacunarySequence& seq,
                                   long long Lambda, const SplitOptions& opts) {
    if (Lambda < 1) throw std::invalid_argument("dyadic_error_sup: Lambda must be >= 1");
    DyadicErrorResult out;
    for (long long lambda : seq.radii)
        if (lambda >= Lambda && lambda < 2 * Lambda) out.radii.push_back(lambda);
    if (out.radii.size() > 1)
        throw std::logic_error("dyadic_error_sup: sequence is not lacunary in the block");
    if (out.radii.empty()) return out;
    out.l2 = error_block_sup_l2(f, out.radii, opts, &out.grid_side);
    return out;
}

double lp_norm(const GridFunction& f, double p) {
    if (std::isinf(p)) return f.max_abs();
    if (p < 1.0) throw std::invalid_argument("lp_norm: requires p >= 1");
    double acc = 0.0;
    if (p == 1.0) {
        for (double v : f.values()) acc += std::abs(v);
        return acc;
    }
    if (p == 2.0) {
        for (double v : f.values()) acc += v * v;
        return std::sqrt(acc);
    }
    for (double v : f.values())
        if (v != 0.0) acc += std::pow(std::abs(v), p);
    return std::pow(acc, 1.0 / p);
}

long long distribution_level(const GridFunction& f, double beta) {
    if (beta <= 0.0) throw std::invalid_argument("distribution_level: requires beta > 0");
    long long count = 0;
    for (double v : f.values())
        if (v > beta) ++count;
    return count;
}

double weak_type_ratio(const GridFunction& indicator, const lattice::LacunarySequence& seq,
                       double beta) {
    if (beta <= 0.0) throw std::invalid_argument("weak_type_ratio: requires beta > 0");
    int d = indicator.dim();
    double exponent = static_cast<double>(d - 1) / (d + 1);
    GridFunction maximal = lacunary_maximal(indicator, seq);
    long long level = distribution_level(maximal, beta);
    double f_size = 0.0;
    for (double v : indicator.values()) f_size += std::abs(v);
    if (f_size == 0.0) throw std::invalid_argument("weak_type_ratio: empty indicator");
    return beta * std::pow(static_cast<double>(level), exponent) / std::pow(f_size, exponent);
}

double weak_type_max_ratio(const GridFunction& indicator, const lattice::LacunarySequence& seq) {
    int d = indicator.dim();
    double exponent = static_cast<double>(d - 1) / (d + 1);
    GridFunction maximal = lacunary_maximal(indicator, seq);
    double f_size = 0.0;
    for (double v : indicator.values()) f_size += std::abs(v);
    if (f_size == 0.0) throw std::invalid_argument("weak_type_max_ratio: empty indicator");
    std::vector<double> values;
    for (double v : maximal.values())
        if (v > 0.0) values.push_back(v);
    std::sort(values.begin(), values.end(), std::greater<double>());
    double best = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i + 1 < values.size() && values[i + 1] == values[i]) continue;  // take the full level set
        // beta at this level value: the set {maximal >= v} has i+1 points
        best = std::max(best, values[i] * std::pow(static_cast<double>(i + 1), exponent));
    }
    return best / std::pow(f_size, exponent);
}

std::pair<double, double> weak_type_budget(int d, double beta, double f_size) {
    if (d < 4) throw std::invalid_argument("weak_type_budget: requires d >= 4");
    if (beta <= 0.0 || f_size <= 0.0)
        throw std::invalid_argument("weak_type_budget: requires beta > 0 and |F| > 0");
    double alpha = std::pow(beta, -1.0 / (d - 1));
    double e = static_cast<double>(d - 1) / (d + 1);
    double piece1 = std::pow(beta, 2.0 / (d + 1)) * std::pow(alpha * alpha * f_size, e);
    double piece2 = std::pow(beta, -static_cast<double>(d - 3) / (d + 1)) *
                    std::pow(alpha, -static_cast<double>((d - 3) * (d - 1)) / (d + 1)) *
                    std::pow(f_size, e);
    return {piece1, piece2};
}

double interp_exponent(int d, double p) {
    if (d < 2 || p < 1.0) throw std::invalid_argument("interp_exponent: requires d >= 2, p >= 1");
    double x = 2.0 / p;
    return 0.5 * (3.0 - d) * (2.0 - x) + 2.0 * (x - 1.0);
}

double critical_p(int d) {
    if (d < 2) throw std::invalid_argument("critical_p: requires d >= 2");
    return static_cast<double>(d + 1) / (d - 1);
}

}  // namespace lacsph::ops
