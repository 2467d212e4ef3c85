// Discrete differential operators and energy measurements on FieldQ:
// the Landau-de Gennes energy, the EL residual, the weighted monotonicity
// quantity, directional energies and L^p gradient norms.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "grid.hpp"
#include "phi_cutoff.hpp"
#include "qtensor.hpp"

namespace ldg {

// Per-node spatial derivatives of the five coordinates.
struct GradQ {
    double d[3][5] = {};

    double norm2() const {
        double s = 0;
        for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 5; ++c) s += d[a][c] * d[a][c];
        return s;
    }
    // |v . grad Q|^2
    double directional2(const Vec3& v) const {
        double s = 0;
        const double vv[3] = {v.x, v.y, v.z};
        for (int c = 0; c < 5; ++c) {
            double t = 0;
            for (int a = 0; a < 3; ++a) t += vv[a] * d[a][c];
            s += t * t;
        }
        return s;
    }
    // symmetric structure tensor S_ab = sum_c d[a][c] d[b][c]
    Mat3 structure() const {
        Mat3 S;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                double s = 0;
                for (int c = 0; c < 5; ++c) s += d[a][c] * d[b][c];
                S(a, b) = s;
            }
        return S;
    }
};

// Central differences in the interior, one-sided on the outermost layer.
inline GradQ gradient_at(const FieldQ& f, int i, int j, int k) {
    const GridSpec& g = f.grid;
    GradQ out;
    const double inv2h = 0.5 / g.h, invh = 1.0 / g.h;
    const int idx[3] = {i, j, k};
    const int nmax[3] = {g.nx, g.ny, g.nz};
    const std::size_t stride[3] = {1, std::size_t(g.nx), std::size_t(g.nx) * g.ny};
    const std::size_t n0 = g.index(i, j, k);
    const int nd = g.ndim();
    for (int a = 0; a < nd; ++a) {
        const double* base = f.values.data() + 5 * n0;
        if (idx[a] > 0 && idx[a] < nmax[a] - 1) {
            const double* p = base + 5 * stride[a];
            const double* m = base - 5 * std::ptrdiff_t(stride[a]);
            for (int c = 0; c < 5; ++c) out.d[a][c] = (p[c] - m[c]) * inv2h;
        } else if (idx[a] == 0) {
            const double* p = base + 5 * stride[a];
            for (int c = 0; c < 5; ++c) out.d[a][c] = (p[c] - base[c]) * invh;
        } else {
            const double* m = base - 5 * std::ptrdiff_t(stride[a]);
            for (int c = 0; c < 5; ++c) out.d[a][c] = (base[c] - m[c]) * invh;
        }
    }
    return out;
}

inline double bulk_at(const FieldQ& f, std::size_t node) {
    return bulk_potential(f.at(node), f.mp);
}

// e_eps = 0.5 |grad Q|^2 + f(Q)/eps^2 at one node.
inline double energy_density_at(const FieldQ& f, int i, int j, int k) {
    double gd = gradient_at(f, i, j, k).norm2();
    return 0.5 * gd + bulk_at(f, f.grid.index(i, j, k)) / (f.epsilon * f.epsilon);
}

struct EnergyBreakdown {
    double dirichlet = 0.0;
    double bulk = 0.0;
    double total() const { return dirichlet + bulk; }
};

// Node-sampled Riemann sum of the energy over a region; fixed index order so
// results are bitwise reproducible.
inline EnergyBreakdown energy(const FieldQ& f, const Region& region) {
    if (!f.region_inside(region))
        throw RegionOutOfDomain("energy: region exceeds the grid extent");
    const GridSpec& g = f.grid;
    NodeRange r = clip_range(g, region_bbox(region));
    const double w = g.cell_measure(), inv_eps2 = 1.0 / (f.epsilon * f.epsilon);
    EnergyBreakdown e;
    for (int k = r.k0; k <= r.k1; ++k)
        for (int j = r.j0; j <= r.j1; ++j)
            for (int i = r.i0; i <= r.i1; ++i) {
                if (!region_contains(region, g.coord(i, j, k))) continue;
                e.dirichlet += 0.5 * gradient_at(f, i, j, k).norm2() * w;
                e.bulk += bulk_at(f, g.index(i, j, k)) * inv_eps2 * w;
            }
    return e;
}

inline EnergyBreakdown energy_total(const FieldQ& f) {
    Box all{f.grid.extent_lo(), f.grid.extent_hi()};
    return energy(f, Region{all});
}

// Discrete residual of the Euler-Lagrange equation,
//   -eps^2 Lap Q - aQ - bQ^2 + (b/3)|Q|^2 I + c|Q|^2 Q,
// on nodes at least one layer away from the boundary.
struct ElResidual {
    std::vector<double> node_norm;  // 0 on boundary-layer nodes
    double sup = 0.0;
};

inline ElResidual el_residual(const FieldQ& f) {
    const GridSpec& g = f.grid;
    ElResidual res;
    res.node_norm.assign(g.num_nodes(), 0.0);
    const double eps2 = f.epsilon * f.epsilon, invh2 = 1.0 / (g.h * g.h);
    const bool three_d = g.nz > 1;
    const std::size_t sx = 1, sy = g.nx, sz = std::size_t(g.nx) * g.ny;
    for (int k = three_d ? 1 : 0; k < (three_d ? g.nz - 1 : 1); ++k)
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) {
                std::size_t n = g.index(i, j, k);
                const double* q = f.values.data() + 5 * n;
                QTensor lap;
                for (int c = 0; c < 5; ++c) {
                    double s = q[c + 5 * sx] + q[c - 5 * sx] + q[c + 5 * sy] + q[c - 5 * sy] -
                               (three_d ? 6.0 : 4.0) * q[c];
                    if (three_d) s += q[c + 5 * sz] + q[c - 5 * sz];
                    lap.c[c] = s * invh2;
                }
                QTensor r = bulk_gradient(f.at(n), f.mp) - lap * eps2;
                double nn = r.norm();
                res.node_norm[n] = nn;
                res.sup = std::max(res.sup, nn);
            }
    return res;
}

// Theta_r^phi(Q, x) = (1/r) * sum e_eps(y) phi(|y-x|^2 / r^2) h^n over the
// support |y-x| < sqrt(10) r.
inline double theta(const FieldQ& f, const Vec3& x, double r, const PhiCutoff& phi) {
    const double sup_r = std::sqrt(10.0) * r;
    if (f.boundary_margin(x) < sup_r)
        throw SupportExceedsDomain("theta: phi support ball exceeds the domain");
    const GridSpec& g = f.grid;
    Ball support{x, sup_r};
    NodeRange nr = clip_range(g, region_bbox(Region{support}));
    const double w = g.cell_measure(), inv_r2 = 1.0 / (r * r);
    const double inv_eps2 = 1.0 / (f.epsilon * f.epsilon);
    double acc = 0.0;
    for (int k = nr.k0; k <= nr.k1; ++k)
        for (int j = nr.j0; j <= nr.j1; ++j)
            for (int i = nr.i0; i <= nr.i1; ++i) {
                Vec3 y = g.coord(i, j, k);
                double d2 = (y - x).dot(y - x);
                if (d2 >= sup_r * sup_r) continue;
                double weight = phi.eval(d2 * inv_r2);
                if (weight == 0.0) continue;
                double e = 0.5 * gradient_at(f, i, j, k).norm2() +
                           bulk_at(f, g.index(i, j, k)) * inv_eps2;
                acc += e * weight;
            }
    return acc * w / r;
}

// (1/r) * sum_{B_r(x)} |v . grad Q|^2 h^n
inline double directional_energy(const FieldQ& f, const Vec3& v, const Vec3& x, double r) {
    Ball ball{x, r};
    if (!f.region_inside(Region{ball}))
        throw RegionOutOfDomain("directional_energy: ball exceeds the grid extent");
    Vec3 u = v.normalized();
    const GridSpec& g = f.grid;
    NodeRange nr = clip_range(g, region_bbox(Region{ball}));
    double acc = 0.0;
    for (int k = nr.k0; k <= nr.k1; ++k)
        for (int j = nr.j0; j <= nr.j1; ++j)
            for (int i = nr.i0; i <= nr.i1; ++i) {
                if (!ball.contains(g.coord(i, j, k))) continue;
                acc += gradient_at(f, i, j, k).directional2(u);
            }
    return acc * g.cell_measure() / r;
}

// Structure tensor sum_{B_r(x)} (d_a Q : d_b Q) h^n / r; directional energy
// along v equals v . S v.
inline Mat3 directional_structure(const FieldQ& f, const Vec3& x, double r) {
    Ball ball{x, r};
    if (!f.region_inside(Region{ball}))
        throw RegionOutOfDomain("directional_structure: ball exceeds the grid extent");
    const GridSpec& g = f.grid;
    NodeRange nr = clip_range(g, region_bbox(Region{ball}));
    Mat3 S;
    for (int k = nr.k0; k <= nr.k1; ++k)
        for (int j = nr.j0; j <= nr.j1; ++j)
            for (int i = nr.i0; i <= nr.i1; ++i) {
                if (!ball.contains(g.coord(i, j, k))) continue;
                Mat3 s = gradient_at(f, i, j, k).structure();
                for (int t = 0; t < 9; ++t) S.m[t] += s.m[t];
            }
    return S * (g.cell_measure() / r);
}

// (sum |grad Q|^p h^n)^{1/p} over a region
inline double lp_gradient_norm(const FieldQ& f, double p, const Region& region) {
    if (p < 1.0) throw std::invalid_argument("lp_gradient_norm: p must be >= 1");
    if (!f.region_inside(region))
        throw RegionOutOfDomain("lp_gradient_norm: region exceeds the grid extent");
    const GridSpec& g = f.grid;
    NodeRange nr = clip_range(g, region_bbox(region));
    double acc = 0.0;
    for (int k = nr.k0; k <= nr.k1; ++k)
        for (int j = nr.j0; j <= nr.j1; ++j)
            for (int i = nr.i0; i <= nr.i1; ++i) {
                if (!region_contains(region, g.coord(i, j, k))) continue;
                double g2 = gradient_at(f, i, j, k).norm2();
                acc += std::pow(g2, 0.5 * p);
            }
    return std::pow(acc * g.cell_measure(), 1.0 / p);
}

// sup over nodes of |Q| (the L^inf bound entering every constant)
inline double sup_norm(const FieldQ& f) {
    double m = 0.0;
    for (std::size_t n = 0; n < f.grid.num_nodes(); ++n) {
        double s = 0;
        for (int c = 0; c < 5; ++c) s += f.values[5 * n + c] * f.values[5 * n + c];
        m = std::max(m, s);
    }
    return std::sqrt(m);
}

}  // namespace ldg
