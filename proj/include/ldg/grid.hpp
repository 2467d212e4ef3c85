// Uniform grids (2D cross-section or 3D), physical regions, and the discrete
// Q-tensor field with its Dirichlet boundary mask.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "qtensor.hpp"

namespace ldg {

struct RegionOutOfDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SupportExceedsDomain : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateGeometry : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GridSpec {
    int nx = 0, ny = 0, nz = 1;  // nz == 1 selects 2D (per-unit-length) mode
    double h = 0.0;
    Vec3 origin{};

    int ndim() const { return nz > 1 ? 3 : 2; }
    std::size_t num_nodes() const {
        return std::size_t(nx) * std::size_t(ny) * std::size_t(nz);
    }
    // x-fastest linear index
    std::size_t index(int i, int j, int k) const {
        return std::size_t(i) + std::size_t(nx) * (std::size_t(j) + std::size_t(ny) * k);
    }
    Vec3 coord(int i, int j, int k) const {
        return {origin.x + h * i, origin.y + h * j, origin.z + h * k};
    }
    // node volume weight h^n
    double cell_measure() const { return ndim() == 3 ? h * h * h : h * h; }

    Vec3 extent_lo() const { return origin; }
    Vec3 extent_hi() const {
        return {origin.x + h * (nx - 1), origin.y + h * (ny - 1),
                origin.z + h * (nz - 1)};
    }

    void validate() const {
        if (h <= 0) throw std::invalid_argument("GridSpec: h must be positive");
        if (nx < 4 || ny < 4 || (nz != 1 && nz < 4))
            throw std::invalid_argument("GridSpec: need at least 4 nodes per axis");
    }
};

struct Ball {
    Vec3 center{};
    double radius = 0.0;
    bool contains(const Vec3& p) const { return (p - center).dot(p - center) < radius * radius; }
};

struct Box {
    Vec3 lo{}, hi{};
    bool contains(const Vec3& p) const {
        return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y && p.z >= lo.z &&
               p.z <= hi.z;
    }
};

using Region = std::variant<Ball, Box>;

inline bool region_contains(const Region& r, const Vec3& p) {
    return std::visit([&](const auto& g) { return g.contains(p); }, r);
}

// Axis-aligned bounding box of a region, for loop-range clipping.
inline Box region_bbox(const Region& r) {
    if (const Ball* b = std::get_if<Ball>(&r)) {
        Vec3 d{b->radius, b->radius, b->radius};
        return {b->center - d, b->center + d};
    }
    return std::get<Box>(r);
}

struct FieldQ {
    GridSpec grid;
    MaterialParams mp;
    double epsilon = 0.0;
    std::vector<double> values;          // 5 coordinates per node, node-major
    std::vector<std::uint8_t> boundary;  // 1 = Dirichlet-fixed node

    static FieldQ make(const GridSpec& g, const MaterialParams& mp, double epsilon) {
        g.validate();
        if (epsilon <= 0) throw std::invalid_argument("FieldQ: epsilon must be positive");
        FieldQ f;
        f.grid = g;
        f.mp = mp;
        f.epsilon = epsilon;
        f.values.assign(g.num_nodes() * 5, 0.0);
        f.boundary.assign(g.num_nodes(), 0);
        // outermost node layer carries the Dirichlet data
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    bool edge = i == 0 || i == g.nx - 1 || j == 0 || j == g.ny - 1;
                    if (g.nz > 1) edge = edge || k == 0 || k == g.nz - 1;
                    f.boundary[g.index(i, j, k)] = edge ? 1 : 0;
                }
        return f;
    }

    QTensor at(std::size_t node) const {
        QTensor q;
        for (int c = 0; c < 5; ++c) q.c[c] = values[5 * node + c];
        return q;
    }
    void set(std::size_t node, const QTensor& q) {
        for (int c = 0; c < 5; ++c) values[5 * node + c] = q.c[c];
    }

    // largest ball radius around p staying inside the node hull (sup-norm margin)
    double boundary_margin(const Vec3& p) const {
        Vec3 lo = grid.extent_lo(), hi = grid.extent_hi();
        double m = std::min(p.x - lo.x, hi.x - p.x);
        m = std::min(m, std::min(p.y - lo.y, hi.y - p.y));
        if (grid.nz > 1) m = std::min(m, std::min(p.z - lo.z, hi.z - p.z));
        return m;
    }

    bool region_inside(const Region& r) const {
        Box bb = region_bbox(r);
        Vec3 lo = grid.extent_lo(), hi = grid.extent_hi();
        bool ok = bb.lo.x >= lo.x && bb.hi.x <= hi.x && bb.lo.y >= lo.y && bb.hi.y <= hi.y;
        if (grid.nz > 1) ok = ok && bb.lo.z >= lo.z && bb.hi.z <= hi.z;
        return ok;
    }
};

// Index range of nodes whose coordinates can fall inside a bounding box.
struct NodeRange {
    int i0, i1, j0, j1, k0, k1;
};

inline NodeRange clip_range(const GridSpec& g, const Box& bb) {
    auto clampi = [](int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); };
    NodeRange r{};
    r.i0 = clampi(int(std::ceil((bb.lo.x - g.origin.x) / g.h - 1e-12)), 0, g.nx - 1);
    r.i1 = clampi(int(std::floor((bb.hi.x - g.origin.x) / g.h + 1e-12)), 0, g.nx - 1);
    r.j0 = clampi(int(std::ceil((bb.lo.y - g.origin.y) / g.h - 1e-12)), 0, g.ny - 1);
    r.j1 = clampi(int(std::floor((bb.hi.y - g.origin.y) / g.h + 1e-12)), 0, g.ny - 1);
    if (g.nz > 1) {
        r.k0 = clampi(int(std::ceil((bb.lo.z - g.origin.z) / g.h - 1e-12)), 0, g.nz - 1);
        r.k1 = clampi(int(std::floor((bb.hi.z - g.origin.z) / g.h + 1e-12)), 0, g.nz - 1);
    } else {
        r.k0 = 0;
        r.k1 = 0;
    }
    return r;
}

}  // namespace ldg
