// Boundary-data families and matching interior initializations: the radial
// point defect, straight disclination lines of half-integer winding, and
// constant vacuum states.
#pragma once

#include <cmath>

#include "field_ops.hpp"
#include "grid.hpp"

namespace ldg {

struct DisclinationAxis {
    Vec3 point{};      // a point on the line
    Vec3 direction{};  // unit direction
    // orthonormal frame spanning the normal plane
    Vec3 e1{}, e2{};

    static DisclinationAxis make(const Vec3& point, const Vec3& direction) {
        DisclinationAxis ax;
        ax.point = point;
        ax.direction = direction.normalized();
        Vec3 seed = std::abs(ax.direction.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        ax.e1 = ax.direction.cross(seed).normalized();
        ax.e2 = ax.direction.cross(ax.e1);
        return ax;
    }

    // in-plane displacement of p from the line
    Vec3 radial(const Vec3& p) const {
        Vec3 d = p - point;
        return d - direction * d.dot(direction);
    }
};

// Director winding by 2 pi w in the plane normal to the axis; uniaxial vacuum
// amplitude. Well-defined as a Q-tensor for half-integer w.
inline QTensor disclination_value(const DisclinationAxis& ax, double winding,
                                  const MaterialParams& mp, const Vec3& p) {
    Vec3 r = ax.radial(p);
    double theta = std::atan2(r.dot(ax.e2), r.dot(ax.e1));
    double a = winding * theta;
    Vec3 n = ax.e1 * std::cos(a) + ax.e2 * std::sin(a);
    return uniaxial(n, mp.s_star);
}

inline QTensor hedgehog_value(const Vec3& center, const MaterialParams& mp, const Vec3& p) {
    return uniaxial(p - center, mp.s_star);
}

namespace detail {

template <class F>
void fill_boundary(FieldQ& f, F&& value) {
    const GridSpec& g = f.grid;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                std::size_t n = g.index(i, j, k);
                if (f.boundary[n]) f.set(n, value(g.coord(i, j, k)));
            }
}

template <class F>
void fill_all(FieldQ& f, F&& value) {
    const GridSpec& g = f.grid;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                std::size_t n = g.index(i, j, k);
                f.set(n, value(g.coord(i, j, k)));
            }
}

}  // namespace detail

inline void hedgehog_bc(FieldQ& f, const Vec3& center) {
    const GridSpec& g = f.grid;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (f.boundary[g.index(i, j, k)] &&
                    (g.coord(i, j, k) - center).norm() < 1e-9 * g.h)
                    throw DegenerateGeometry("hedgehog_bc: center lies on a boundary node");
    detail::fill_boundary(f, [&](const Vec3& p) { return hedgehog_value(center, f.mp, p); });
}

inline void disclination_bc(FieldQ& f, const DisclinationAxis& ax, double winding) {
    double w2 = 2.0 * winding;
    if (std::abs(w2 - std::round(w2)) > 1e-12)
        throw std::invalid_argument("disclination_bc: winding must be a half-integer");
    const GridSpec& g = f.grid;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                if (f.boundary[g.index(i, j, k)] &&
                    ax.radial(g.coord(i, j, k)).norm() < 1e-9 * g.h)
                    throw DegenerateGeometry("disclination_bc: axis passes through a boundary node");
    detail::fill_boundary(
        f, [&](const Vec3& p) { return disclination_value(ax, winding, f.mp, p); });
}

inline void constant_bc(FieldQ& f, const Vec3& director) {
    QTensor v = uniaxial(director, f.mp.s_star);
    detail::fill_boundary(f, [&](const Vec3&) { return v; });
}

// Interior initializations: the boundary formula with the uniaxial amplitude
// ramped down over the core scale, so half-integer windings start isotropic
// on the axis.
inline double core_ramp(double dist, double epsilon) {
    double c = 2.0 * epsilon;
    return dist / std::sqrt(dist * dist + c * c);
}

inline void hedgehog_init(FieldQ& f, const Vec3& center) {
    detail::fill_all(f, [&](const Vec3& p) {
        double d = (p - center).norm();
        if (d < 1e-12) return QTensor{};
        return hedgehog_value(center, f.mp, p) * core_ramp(d, f.epsilon);
    });
    // Dirichlet data is the pure vacuum formula, independent of epsilon,
    // so continuation sweeps solve the same boundary-value family.
    hedgehog_bc(f, center);
}

inline void disclination_init(FieldQ& f, const DisclinationAxis& ax, double winding) {
    detail::fill_all(f, [&](const Vec3& p) {
        double d = ax.radial(p).norm();
        if (d < 1e-12) return QTensor{};
        return disclination_value(ax, winding, f.mp, p) * core_ramp(d, f.epsilon);
    });
    disclination_bc(f, ax, winding);
}

inline void constant_init(FieldQ& f, const Vec3& director) {
    QTensor v = uniaxial(director, f.mp.s_star);
    detail::fill_all(f, [&](const Vec3&) { return v; });
}

}  // namespace ldg
