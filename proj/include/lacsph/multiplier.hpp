#pragma once

// Frequency-side objects: the smooth cube cutoff Psi, the surface-measure
// Fourier transform, the exact multiplier of the discrete spherical average,
// the arithmetic main term with its q-slices and low/high frequency split,
// and the error multiplier with sampled sup estimation.
//
// Conventions fixed here once for the whole library:
//   * e(t) = exp(2 pi i t); frequencies live on the torus with canonical
//     representatives in [-1/2, 1/2)^d.
//   * surface_ft uses the probability-normalized surface measure, so
//     surface_ft(d, lambda, 0) = 1.
//   * The main term sums K(lambda,q,l) Psi(q xi - l) surface_ft(xi - l/q)
//     over q <= q_max with at most one l per q (nearest integer vector to
//     q xi).  Under Normalization::MassMatched the sum is divided by the
//     partial singular series Z(lambda) = sum_{q <= sqrt(lambda)} K(lambda,q,0),
//     which pins the decomposition to total mass 1 at xi = 0 and is the
//     scaling under which the error multiplier actually decays; the raw
//     formula is available as Normalization::Literal and Z is reported,
//     never silently absorbed.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "lacsph/common.hpp"
#include "lacsph/lattice.hpp"

namespace lacsph::multiplier {

// --- smooth bump -----------------------------------------------------------

// 1-d profile: 1 on |t| <= 1/8, 0 on |t| >= 1/4, glued by
// h(s) = f(s)/(f(s)+f(1-s)), f(s) = exp(-1/s), s = (1/4 - |t|)/(1/8).
double bump1d(double t);

// Psi(u) = prod_j bump1d(u_j) on R^d (no torus reduction).
double bump_box(std::span<const double> u);

// Psi_B(u) = Psi(B u), scaling applied before any torus reduction.
double bump_scaled(double B, std::span<const double> u);

// Canonical torus representative in [-1/2, 1/2).
double canonical_frequency(double t);
void canonicalize(std::span<double> xi);

// Psi evaluated at the canonical representative of xi.
double bump_on_torus(std::span<const double> xi);

// --- surface measure -------------------------------------------------------

// Fourier transform of the probability surface measure on the sphere of
// radius sqrt(lambda):  Gamma(d/2) (pi sqrt(lambda) |xi|)^{-(d-2)/2}
//                        J_{(d-2)/2}(2 pi sqrt(lambda) |xi|),
// real and radial, equal to 1 at xi = 0.
double surface_ft(int d, double lambda, std::span<const double> xi);

// Envelope samples of |surface_ft| over radii: rows (r, sup over directions
// and over one oscillation window).  The caller fits the log-log slope
// against -(d-1)/2.
std::vector<std::pair<double, double>> surface_ft_decay(int d, double lambda,
                                                        std::span<const double> r_grid,
                                                        int directions, int crest_samples,
                                                        std::uint64_t seed);

// --- multiplier decomposition ----------------------------------------------

enum class Normalization { MassMatched, Literal };
enum class LowBumpScale { QLambdaOverAlpha, LambdaOverAlpha };

struct MultiplierOptions {
    Normalization norm = Normalization::MassMatched;
    LowBumpScale low_scale = LowBumpScale::QLambdaOverAlpha;
};

// Per-(d, lambda) evaluation context: caches the sphere shell, the
// Kloosterman values K(lambda, q, l) and the mass normalizer Z(lambda).
class MultiplierContext {
  public:
    MultiplierContext(int d, long long lambda, MultiplierOptions opts = {});

    int dim() const { return d_; }
    long long lambda() const { return lambda_; }
    long long q_max_full() const { return q_max_full_; }  // floor(sqrt(lambda))
    double mass_normalizer() const { return z_; }         // 1 under Literal
    double partial_singular_series() const { return z_raw_; }
    const lattice::SphereShell& shell() const { return shell_; }

    // sigma_hat(xi) = N^{-1} sum_{|m|^2=lambda} e(-m.xi); exactly 1 at 0.
    cplx discrete(std::span<const double> xi) const;

    // single-q term of the main sum
    cplx q_slice(std::span<const double> xi, long long q);

    // sum of q_slice over q <= q_max
    cplx main_term(std::span<const double> xi, long long q_max);

    // low piece: bump replaced by Psi_B(xi - l/q), B = q sqrt(lambda)/alpha
    // (or sqrt(lambda)/alpha under LowBumpScale::LambdaOverAlpha)
    cplx low_piece(std::span<const double> xi, long long q, double alpha);

    // high piece: q_slice - low_piece
    cplx high_piece(std::span<const double> xi, long long q, double alpha);

    // error multiplier: discrete - main_term with the full q range
    cplx error(std::span<const double> xi);

    // K(lambda, q, l mod q) through the memo cache
    cplx kloosterman(long long q, std::span<const long long> l);

  private:
    struct Located {
        double bump = 0.0;                // Psi(q xi - l)
        std::vector<long long> l;         // chosen integer vector (unreduced)
        std::vector<double> u;            // xi - l/q, the small representative
    };
    Located locate(std::span<const double> xi, long long q) const;

    int d_;
    long long lambda_;
    MultiplierOptions opts_;
    long long q_max_full_;
    lattice::SphereShell shell_;
    double z_ = 1.0;      // active normalizer
    double z_raw_ = 1.0;  // partial singular series, always reported
    std::unordered_map<std::uint64_t, cplx> kcache_;  // key: q and the l residues, 7 bits each
    std::mutex cache_mutex_;
};

// --- sampled sup of the error multiplier ------------------------------------

struct SampleStrategy {
    int grid_resolution = 5;   // uniform grid points per dimension
    int l_per_q = 4;           // near-rational points per q (l = 0, e1, all-ones, random)
    int random_points = 256;
    std::uint64_t seed = 1;
};

struct SupSample {
    double value = 0.0;
    long long points = 0;
};

// Max |error(xi)| over the deterministic sample set: uniform grid, points
// near each rational l/q (offset 1/(16 q sqrt(lambda)) per coordinate with
// seeded signs), and seeded uniform points.  A lower bound on the true sup.
SupSample error_sup_sample(MultiplierContext& ctx, const SampleStrategy& strategy, int jobs);

}  // namespace lacsph::multiplier
