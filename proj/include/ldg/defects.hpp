// Topological and core diagnostics: defect-core extraction, Z/2 loop
// classification via sign-propagated director lifting, per-slab cross-section
// scans along a line axis, and cylinder bulk lower bounds.
#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "boundary.hpp"
#include "field_ops.hpp"
#include "grid.hpp"
#include "qtensor.hpp"

namespace ldg {

struct LoopThroughCore : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Closed polygonal loop of interior points. samples_per_segment extra
// evaluation points are inserted uniformly on each edge.
struct LoopSpec {
    std::vector<Vec3> points;  // closed: front == back
    int samples_per_segment = 1;

    void validate(const GridSpec& g) const {
        if (points.size() < 4)
            throw std::invalid_argument("LoopSpec: need at least 3 distinct vertices");
        Vec3 gap = points.front() - points.back();
        if (std::sqrt(gap.dot(gap)) > 1e-12 * (1.0 + g.h))
            throw std::invalid_argument("LoopSpec: loop must be closed (first == last)");
        for (std::size_t i = 0; i + 1 < points.size(); ++i) {
            Vec3 d = points[i + 1] - points[i];
            if (std::sqrt(d.dot(d)) > 2.0 * g.h + 1e-12)
                throw std::invalid_argument(
                    "LoopSpec: consecutive vertices must lie within 2h");
        }
        if (samples_per_segment < 1)
            throw std::invalid_argument("LoopSpec: samples_per_segment >= 1");
    }
};

namespace detail {

// Trilinear (bilinear in 2d) interpolation of the five coordinates.
inline QTensor sample(const FieldQ& f, const Vec3& p) {
    const GridSpec& g = f.grid;
    auto cell = [&](double x, double o, int n) {
        double t = (x - o) / g.h;
        int i = int(std::floor(t));
        i = std::max(0, std::min(i, n - 2));
        return std::pair<int, double>{i, t - i};
    };
    auto [i, fx] = cell(p.x, g.origin.x, g.nx);
    auto [j, fy] = cell(p.y, g.origin.y, g.ny);
    int k = 0;
    double fz = 0;
    if (g.nz > 1) std::tie(k, fz) = std::pair<int, double>(cell(p.z, g.origin.z, g.nz));
    QTensor out{};
    const int kk1 = g.nz > 1 ? 1 : 0;
    for (int dk = 0; dk <= kk1; ++dk)
        for (int dj = 0; dj <= 1; ++dj)
            for (int di = 0; di <= 1; ++di) {
                double w = (di ? fx : 1 - fx) * (dj ? fy : 1 - fy) *
                           (g.nz > 1 ? (dk ? fz : 1 - fz) : 1.0);
                if (w == 0.0) continue;
                const double* v = f.values.data() + 5 * g.index(i + di, j + dj, k + dk);
                for (int c = 0; c < 5; ++c) out.c[c] += w * v[c];
            }
    return out;
}

}  // namespace detail

// Default core threshold: the bulk-potential value at the maximally biaxial
// midpoint of two orthogonal vacuum states, halved. Calibrated per (a,b,c).
inline double default_eta_core(const MaterialParams& mp) {
    QTensor q1 = uniaxial({1, 0, 0}, mp.s_star);
    QTensor q2 = uniaxial({0, 1, 0}, mp.s_star);
    QTensor mid{};
    for (int c = 0; c < 5; ++c) mid.c[c] = 0.5 * (q1.c[c] + q2.c[c]);
    return 0.5 * bulk_potential(mid, mp);
}

// Nodes whose bulk potential exceeds the core threshold.
inline std::vector<std::uint8_t> core_mask(const FieldQ& f, double eta_core) {
    if (!(eta_core > 0)) throw std::invalid_argument("core_mask: eta_core > 0");
    std::vector<std::uint8_t> mask(f.grid.num_nodes(), 0);
    for (std::size_t n = 0; n < mask.size(); ++n)
        mask[n] = bulk_at(f, n) > eta_core ? 1 : 0;
    return mask;
}

enum class LoopClass { trivial, nontrivial };

// Z/2 class of a closed director path: nontrivial iff the sign-propagated
// lift reverses after a full traversal. Directors need not be unit-coherent
// in sign; each must be a valid leading eigenvector sample.
inline LoopClass loop_class_from_directors(const std::vector<Vec3>& dirs) {
    if (dirs.size() < 3)
        throw std::invalid_argument("loop_class_from_directors: need >= 3 samples");
    double sign = 1.0;
    for (std::size_t i = 0; i + 1 < dirs.size(); ++i) {
        double d = dirs[i].dot(dirs[i + 1]);
        if (std::abs(d) < 0.5)
            throw LoopThroughCore(
                "loop_class: consecutive directors nearly orthogonal; "
                "sampling density insufficient or loop meets a core");
        if (d < 0) sign = -sign;
    }
    // close the loop: compare last to first
    double d = dirs.back().dot(dirs.front());
    if (std::abs(d) < 0.5)
        throw LoopThroughCore("loop_class: closing segment nearly orthogonal");
    if (d < 0) sign = -sign;
    return sign < 0 ? LoopClass::nontrivial : LoopClass::trivial;
}

struct LoopVerdict {
    LoopClass cls = LoopClass::trivial;
    double min_gap = 0.0;  // smallest leading-eigenvalue gap along the loop
    double max_f = 0.0;    // largest bulk-potential value along the loop
};

inline LoopVerdict loop_class(const FieldQ& f, const LoopSpec& loop, double eta_core,
                              double gap_tol = 1e-6) {
    loop.validate(f.grid);
    std::vector<Vec3> dirs;
    LoopVerdict out;
    out.min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + 1 < loop.points.size(); ++s) {
        for (int t = 0; t < loop.samples_per_segment; ++t) {
            double u = double(t) / loop.samples_per_segment;
            Vec3 p = loop.points[s] + (loop.points[s + 1] - loop.points[s]) * u;
            if (f.boundary_margin(p) <= 0)
                throw std::invalid_argument("loop_class: loop leaves the grid");
            QTensor q = detail::sample(f, p);
            double fq = bulk_potential(q, f.mp);
            out.max_f = std::max(out.max_f, fq);
            if (fq >= eta_core)
                throw LoopThroughCore("loop_class: f(Q) >= eta_core on the loop");
            Eigen3 e = eigen_sym3(q.to_matrix());
            double gap = e.values[0] - e.values[1];
            out.min_gap = std::min(out.min_gap, gap);
            if (gap <= gap_tol)
                throw LoopThroughCore("loop_class: leading eigenvalue gap too small");
            dirs.push_back(e.vectors[0]);
        }
    }
    out.cls = loop_class_from_directors(dirs);
    return out;
}

// A finite solid cylinder around a line axis: |t| coordinates in [t0, t1]
// along the axis, radial distance < radius.
struct CylinderSpec {
    DisclinationAxis axis;
    double radius = 0.0;
    double t0 = 0.0, t1 = 0.0;

    bool contains(const Vec3& p) const {
        Vec3 d = p - axis.point;
        double t = d.dot(axis.direction);
        if (t < t0 || t > t1) return false;
        Vec3 r = d - axis.direction * t;
        return r.dot(r) < radius * radius;
    }
    void validate() const {
        if (!(radius > 0)) throw std::invalid_argument("CylinderSpec: radius > 0");
        if (!(t1 > t0)) throw std::invalid_argument("CylinderSpec: t1 > t0");
    }
};

namespace detail {

// The cylinder axis must be a signed coordinate direction; returns axis index.
inline int coordinate_axis(const Vec3& dir) {
    const double c[3] = {dir.x, dir.y, dir.z};
    for (int a = 0; a < 3; ++a)
        if (std::abs(std::abs(c[a]) - 1.0) < 1e-12) return a;
    throw std::invalid_argument("defects: axis must be a coordinate direction");
}

inline bool cylinder_interior(const FieldQ& f, const CylinderSpec& cyl, int a) {
    Vec3 lo = f.grid.extent_lo(), hi = f.grid.extent_hi();
    const double plo[3] = {lo.x, lo.y, lo.z}, phi_[3] = {hi.x, hi.y, hi.z};
    const double pt[3] = {cyl.axis.point.x, cyl.axis.point.y, cyl.axis.point.z};
    const double sgn = a == 0 ? cyl.axis.direction.x
                              : (a == 1 ? cyl.axis.direction.y : cyl.axis.direction.z);
    double lo_t = pt[a] + sgn * cyl.t0, hi_t = pt[a] + sgn * cyl.t1;
    if (lo_t > hi_t) std::swap(lo_t, hi_t);
    if (lo_t < plo[a] || hi_t > phi_[a]) return false;
    for (int b = 0; b < 3; ++b) {
        if (b == a) continue;
        if (pt[b] - cyl.radius < plo[b] || pt[b] + cyl.radius > phi_[b]) return false;
    }
    return true;
}

}  // namespace detail

struct SlabResult {
    double t = 0.0;    // axis coordinate of the slab
    bool found = false;
    Vec3 y{};          // node attaining the slab maximum of f
    double max_f = 0.0;
};

// For every grid slab transverse to the axis with coordinate in [t_lo, t_hi],
// search the disk of the given radius for a node with f(Q) > eta_core.
inline std::vector<SlabResult> cross_section_scan(const FieldQ& f,
                                                  const DisclinationAxis& axis,
                                                  double radius, double t_lo,
                                                  double t_hi, double eta_core) {
    if (!(radius > 0)) throw std::invalid_argument("cross_section_scan: radius > 0");
    if (!(t_hi > t_lo)) throw std::invalid_argument("cross_section_scan: t_hi > t_lo");
    const int a = detail::coordinate_axis(axis.direction);
    CylinderSpec cyl{axis, radius, t_lo, t_hi};
    if (!detail::cylinder_interior(f, cyl, a))
        throw RegionOutOfDomain("cross_section_scan: cylinder exceeds the grid");
    const GridSpec& g = f.grid;
    const int n_axis = a == 0 ? g.nx : (a == 1 ? g.ny : g.nz);
    const double o_axis = a == 0 ? g.origin.x : (a == 1 ? g.origin.y : g.origin.z);
    const double pt_axis =
        a == 0 ? axis.point.x : (a == 1 ? axis.point.y : axis.point.z);
    std::vector<SlabResult> out;
    for (int s = 0; s < n_axis; ++s) {
        const double coord = o_axis + s * g.h;
        const double sgn = (a == 0   ? axis.direction.x
                            : a == 1 ? axis.direction.y
                                     : axis.direction.z) < 0
                               ? -1.0
                               : 1.0;
        const double t = sgn * (coord - pt_axis);
        if (t < t_lo || t > t_hi) continue;
        SlabResult sr;
        sr.t = t;
        for (int k = (a == 2 ? s : 0); k <= (a == 2 ? s : g.nz - 1); ++k)
            for (int j = (a == 1 ? s : 0); j <= (a == 1 ? s : g.ny - 1); ++j)
                for (int i = (a == 0 ? s : 0); i <= (a == 0 ? s : g.nx - 1); ++i) {
                    Vec3 p = g.coord(i, j, k);
                    Vec3 r = axis.radial(p);
                    if (r.dot(r) >= radius * radius) continue;
                    double fq = bulk_at(f, g.index(i, j, k));
                    if (fq > sr.max_f) {
                        sr.max_f = fq;
                        sr.y = p;
                    }
                }
        sr.found = sr.max_f > eta_core;
        out.push_back(sr);
    }
    return out;
}

// Cylinder bulk integral scaled by 1/eps^2; stays bounded below along a
// dyadic eps sweep across a disclination, decays like eps for point defects.
inline double sharpness_lower_bound(const FieldQ& f, const CylinderSpec& cyl) {
    cyl.validate();
    const int a = detail::coordinate_axis(cyl.axis.direction);
    if (!detail::cylinder_interior(f, cyl, a))
        throw RegionOutOfDomain("sharpness_lower_bound: cylinder exceeds the grid");
    const GridSpec& g = f.grid;
    double acc = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                Vec3 p = g.coord(i, j, k);
                if (!cyl.contains(p)) continue;
                acc += bulk_at(f, g.index(i, j, k));
            }
    return acc * g.cell_measure() / (f.epsilon * f.epsilon);
}

}  // namespace ldg
