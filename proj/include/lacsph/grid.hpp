#pragma once

// Finitely supported functions on Z^d stored on an odd, origin-centered box,
// with zero extension outside, plus the separable DFT engine used to apply
// multiplier pieces on a periodized grid.

#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <vector>

#include "lacsph/common.hpp"

namespace lacsph::ops {

class GridFunction {
  public:
    GridFunction() = default;
    GridFunction(int dim, int side);

    int dim() const { return dim_; }
    int side() const { return side_; }
    int half() const { return (side_ - 1) / 2; }
    std::size_t size() const { return values_.size(); }

    std::vector<double>& values() { return values_; }
    const std::vector<double>& values() const { return values_; }

    // flat index of the signed coordinate vector (must lie in the box)
    std::size_t flat_index(std::span<const int> n) const;
    // signed coordinates of a flat index
    void coords_of(std::size_t flat, std::span<int> n) const;

    double& at(std::span<const int> n) { return values_[flat_index(n)]; }
    double at(std::span<const int> n) const { return values_[flat_index(n)]; }
    double value_or_zero(std::span<const int> n) const;

    // max |n_i| over nonzero cells; -1 when identically zero
    int support_radius() const;

    double max_abs() const;

  private:
    int dim_ = 0;
    int side_ = 0;
    std::vector<double> values_;
};

// Same values on a larger box (same signed coordinates).
GridFunction embed(const GridFunction& f, int new_side);

// Flat binary serialization: magic "LACG", u32 dim, u32 side, u32 value
// type (1 = real f64), then values as little-endian 64-bit floats.
void write_binary(std::ostream& os, const GridFunction& f);
GridFunction read_binary(std::istream& is);

// CSV with one row per cell: coordinates then value.  Small boxes only.
void write_csv(std::ostream& os, const GridFunction& f);

// --- periodized spectral grid ------------------------------------------------

struct ComplexGrid {
    int dim = 0;
    int side = 0;
    std::vector<cplx> v;

    ComplexGrid() = default;
    ComplexGrid(int d, int s);
    std::size_t size() const { return v.size(); }
};

// f placed at (n mod side); exact as long as side >= f.side().
ComplexGrid embed_periodic(const GridFunction& f, int side);

// In-place separable DFT over all axes with kernel e(sign * j*k / side);
// sign = -1 is the forward transform, sign = +1 the inverse (which applies
// the 1/side^d normalization).
void dft(ComplexGrid& g, int sign, int jobs);

}  // namespace lacsph::ops
