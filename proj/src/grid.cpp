#include "lacsph/grid.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>

namespace lacsph::ops {

namespace {

void check_box(int dim, int side) {
    if (dim < 1 || dim > 8) throw std::invalid_argument("GridFunction: dimension out of range");
    if (side < 1 || side % 2 == 0) throw std::invalid_argument("GridFunction: side must be odd and >= 1");
    double cells = 1.0;
    for (int i = 0; i < dim; ++i) cells *= side;
    if (cells > 4e8) throw resource_error("GridFunction: box of " + std::to_string(cells) + " cells is too large");
}

}  // namespace

GridFunction::GridFunction(int dim, int side) : dim_(dim), side_(side) {
    check_box(dim, side);
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(side);
    values_.assign(total, 0.0);
}

std::size_t GridFunction::flat_index(std::span<const int> n) const {
    int h = half();
    std::size_t idx = 0;
    for (int i = 0; i < dim_; ++i) {
        int c = n[static_cast<std::size_t>(i)];
        if (c < -h || c > h) throw std::out_of_range("GridFunction: coordinate outside box");
        idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(c + h);
    }
    return idx;
}

void GridFunction::coords_of(std::size_t flat, std::span<int> n) const {
    int h = half();
    for (int i = dim_ - 1; i >= 0; --i) {
        n[static_cast<std::size_t>(i)] = static_cast<int>(flat % static_cast<std::size_t>(side_)) - h;
        flat /= static_cast<std::size_t>(side_);
    }
}

double GridFunction::value_or_zero(std::span<const int> n) const {
    int h = half();
    for (int i = 0; i < dim_; ++i)
        if (n[static_cast<std::size_t>(i)] < -h || n[static_cast<std::size_t>(i)] > h) return 0.0;
    return values_[flat_index(n)];
}

int GridFunction::support_radius() const {
    int best = -1;
    std::array<int, 8> n{};
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] == 0.0) continue;
        coords_of(i, std::span<int>(n.data(), static_cast<std::size_t>(dim_)));
        for (int c = 0; c < dim_; ++c) best = std::max(best, std::abs(n[static_cast<std::size_t>(c)]));
    }
    return best;
}

double GridFunction::max_abs() const {
    double best = 0.0;
    for (double v : values_) best = std::max(best, std::abs(v));
    return best;
}

GridFunction embed(const GridFunction& f, int new_side) {
    if (new_side < f.side()) throw std::invalid_argument("embed: new side smaller than old");
    GridFunction out(f.dim(), new_side);
    std::array<int, 8> n{};
    std::span<int> ns(n.data(), static_cast<std::size_t>(f.dim()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (f.values()[i] == 0.0) continue;
        f.coords_of(i, ns);
        out.at(ns) = f.values()[i];
    }
    return out;
}

void write_binary(std::ostream& os, const GridFunction& f) {
    static_assert(std::endian::native == std::endian::little, "serialization assumes little-endian host");
    os.write("LACG", 4);
    std::uint32_t header[3] = {static_cast<std::uint32_t>(f.dim()), static_cast<std::uint32_t>(f.side()), 1u};
    os.write(reinterpret_cast<const char*>(header), sizeof(header));
    os.write(reinterpret_cast<const char*>(f.values().data()),
             static_cast<std::streamsize>(f.size() * sizeof(double)));
}

GridFunction read_binary(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "LACG", 4) != 0) throw std::runtime_error("read_binary: bad magic");
    std::uint32_t header[3];
    is.read(reinterpret_cast<char*>(header), sizeof(header));
    if (!is || header[2] != 1u) throw std::runtime_error("read_binary: unsupported header");
    GridFunction f(static_cast<int>(header[0]), static_cast<int>(header[1]));
    is.read(reinterpret_cast<char*>(f.values().data()),
            static_cast<std::streamsize>(f.size() * sizeof(double)));
    if (!is) throw std::runtime_error("read_binary: truncated payload");
    return f;
}

void write_csv(std::ostream& os, const GridFunction& f) {
    for (int i = 0; i < f.dim(); ++i) os << "n" << (i + 1) << ",";
    os << "value\n";
    char buf[32];
    std::array<int, 8> n{};
    std::span<int> ns(n.data(), static_cast<std::size_t>(f.dim()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        f.coords_of(i, ns);
        for (int c = 0; c < f.dim(); ++c) os << ns[static_cast<std::size_t>(c)] << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", f.values()[i]);
        os << buf << "\n";
    }
}

ComplexGrid::ComplexGrid(int d, int s) : dim(d), side(s) {
    check_box(d, s);
    std::size_t total = 1;
    for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(s);
    v.assign(total, cplx{0.0, 0.0});
}

ComplexGrid embed_periodic(const GridFunction& f, int side) {
    ComplexGrid out(f.dim(), side);
    std::array<int, 8> n{};
    std::span<int> ns(n.data(), static_cast<std::size_t>(f.dim()));
    for (std::size_t i = 0; i < f.size(); ++i) {
        double val = f.values()[i];
        if (val == 0.0) continue;
        f.coords_of(i, ns);
        std::size_t idx = 0;
        for (int c = 0; c < f.dim(); ++c) {
            int m = ns[static_cast<std::size_t>(c)] % side;
            if (m < 0) m += side;
            idx = idx * static_cast<std::size_t>(side) + static_cast<std::size_t>(m);
        }
        out.v[idx] += val;
    }
    return out;
}

namespace {

// Dense side x side transform matrix, split into real/imag parts so the
// per-line matvec autovectorizes.  Cached per (side, sign).
struct DftMatrix {
    std::vector<double> re, im;  // row j: entries [j*side .. j*side+side)
};

const DftMatrix& dft_matrix(int side, int sign) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::unique_ptr<DftMatrix>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(side, sign);
    auto it = cache.find(key);
    if (it == cache.end()) {
        auto m = std::make_unique<DftMatrix>();
        m->re.resize(static_cast<std::size_t>(side) * side);
        m->im.resize(static_cast<std::size_t>(side) * side);
        for (int j = 0; j < side; ++j) {
            for (int k = 0; k < side; ++k) {
                long long t = static_cast<long long>(j) * k % side;
                double ang = sign * kTwoPi * static_cast<double>(t) / side;
                m->re[static_cast<std::size_t>(j) * side + k] = std::cos(ang);
                m->im[static_cast<std::size_t>(j) * side + k] = std::sin(ang);
            }
        }
        it = cache.emplace(key, std::move(m)).first;
    }
    return *it->second;
}

}  // namespace

void dft(ComplexGrid& g, int sign, int jobs) {
    const int side = g.side;
    const std::size_t total = g.size();
    const DftMatrix& mat = dft_matrix(side, sign);
    std::size_t stride = 1;
    for (int axis = g.dim - 1; axis >= 0; --axis) {
        const std::size_t lines = total / static_cast<std::size_t>(side);
        const std::size_t block = stride * static_cast<std::size_t>(side);
        parallel_for(lines, jobs, [&](std::size_t line) {
            std::size_t outer = line / stride;
            std::size_t inner = line % stride;
            std::size_t base = outer * block + inner;
            // gather into per-thread scratch
            static thread_local std::vector<double> xr, xi;
            xr.resize(static_cast<std::size_t>(side));
            xi.resize(static_cast<std::size_t>(side));
            for (int k = 0; k < side; ++k) {
                cplx c = g.v[base + static_cast<std::size_t>(k) * stride];
                xr[static_cast<std::size_t>(k)] = c.real();
                xi[static_cast<std::size_t>(k)] = c.imag();
            }
            for (int j = 0; j < side; ++j) {
                const double* wr = &mat.re[static_cast<std::size_t>(j) * side];
                const double* wi = &mat.im[static_cast<std::size_t>(j) * side];
                double ar = 0.0, ai = 0.0;
                for (int k = 0; k < side; ++k) {
                    ar += xr[static_cast<std::size_t>(k)] * wr[k] - xi[static_cast<std::size_t>(k)] * wi[k];
                    ai += xr[static_cast<std::size_t>(k)] * wi[k] + xi[static_cast<std::size_t>(k)] * wr[k];
                }
                g.v[base + static_cast<std::size_t>(j) * stride] = {ar, ai};
            }
        });
        stride *= static_cast<std::size_t>(side);
    }
    if (sign > 0) {
        double scale = 1.0;
        for (int i = 0; i < g.dim; ++i) scale /= side;
        for (auto& c : g.v) c *= scale;
    }
}

}  // namespace lacsph::ops
