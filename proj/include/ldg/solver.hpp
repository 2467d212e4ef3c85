#pragma once

// Discrete local minimization of E_eps by L2 gradient flow.
//
// Two stepping schemes:
//   explicit      Q <- Q - tau * (-lap_h Q + eps^-2 Df(Q)),
//                 tau <= safety * min(h^2/(2n), eps^2/L_f);
//   semi-implicit (I + tau * (-lap_h)) Q_next = Q - tau * eps^-2 Df(Q),
//                 the constant-coefficient solve done by conjugate
//                 gradients, allowing tau ~ eps^2 independent of h.
//
// Every step is accepted only if the total energy does not increase
// (backtracking halves tau otherwise), so the recorded energy trace is
// non-increasing by construction. Boundary nodes are never written.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ldg/field_ops.hpp"
#include "ldg/grid.hpp"

namespace ldg {

struct NonFiniteEnergy : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Scheme { explicit_euler, semi_implicit };

struct SolveOptions {
    int max_iters = 50000;
    double residual_tol = 1e-5;  // sup-norm of the discrete EL residual
    double step_safety = 0.9;    // in (0, 1]
    Scheme scheme = Scheme::semi_implicit;
    std::uint64_t seed = 0;  // consumed by random initializers, recorded in reports
    int log_every = 50;

    void validate() const {
        if (max_iters < 1) throw std::invalid_argument("SolveOptions: max_iters >= 1");
        if (!(residual_tol > 0))
            throw std::invalid_argument("SolveOptions: residual_tol > 0");
        if (!(step_safety > 0) || step_safety > 1)
            throw std::invalid_argument("SolveOptions: step_safety in (0,1]");
        if (log_every < 1) throw std::invalid_argument("SolveOptions: log_every >= 1");
    }
};

struct ConvergenceRow {
    long iter = 0;
    double energy = 0;
    double residual = 0;  // NaN when not evaluated at this row
    double step = 0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> trace;
    bool converged = false;
    long iterations = 0;
    double final_energy = 0;
    double final_residual = 0;
    double seconds = 0;  // wall time of the minimize call
};

inline void write_convergence_csv(std::ostream& os, const ConvergenceReport& r) {
    os << "iter,energy,residual,step\n";
    char buf[160];
    for (const ConvergenceRow& row : r.trace) {
        std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g,%.17g\n", row.iter, row.energy,
                      row.residual, row.step);
        os << buf;
    }
}

// Uniform L-infinity bound maintained along the flow.
inline double flow_sup_bound(const MaterialParams& mp) {
    return 2.0 * std::sqrt(2.0 / 3.0) * mp.s_star;
}

// Lipschitz bound for the bulk gradient Df on { |Q| <= M }:
// |Df(Q) - Df(P)| <= L_f |Q - P| with L_f = a + 4 b M + 9 c M^2
// (crude but safe: term-by-term bounds on the quadratic/cubic parts).
inline double bulk_lipschitz(const MaterialParams& mp, double M) {
    return mp.a + 4.0 * mp.b * M + 9.0 * mp.c * M * M;
}

// Discrete energy whose exact L2 gradient is the 7-point flow operator:
// forward-difference (edge-based) Dirichlet term plus node-sampled bulk.
// This is the functional the line search monitors; it agrees with the
// central-difference analysis energy to O(h^2).
inline double flow_energy(const FieldQ& f) {
    const GridSpec& g = f.grid;
    const double inv_h2 = 1.0 / (g.h * g.h);
    const double inv_e2 = 1.0 / (f.epsilon * f.epsilon);
    const bool three_d = g.nz > 1;
    const double* v = f.values.data();
    double dir = 0, bulk = 0;
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const std::size_t c = g.index(i, j, k);
                bulk += bulk_potential(f.at(c), f.mp);
                auto edge = [&](std::size_t d) {
                    double s = 0;
                    for (int m = 0; m < 5; ++m) {
                        const double e = v[5 * d + m] - v[5 * c + m];
                        s += e * e;
                    }
                    return s;
                };
                if (i + 1 < g.nx) dir += edge(g.index(i + 1, j, k));
                if (j + 1 < g.ny) dir += edge(g.index(i, j + 1, k));
                if (three_d && k + 1 < g.nz) dir += edge(g.index(i, j, k + 1));
            }
    return (0.5 * dir * inv_h2 + bulk * inv_e2) * g.cell_measure();
}

namespace detail {

// 5-component discrete Laplacian at an interior node.
inline void laplacian_at(const FieldQ& f, int i, int j, int k, double out[5]) {
    const GridSpec& g = f.grid;
    const double inv_h2 = 1.0 / (g.h * g.h);
    const std::size_t c = g.index(i, j, k);
    const std::size_t xm = g.index(i - 1, j, k), xp = g.index(i + 1, j, k);
    const std::size_t ym = g.index(i, j - 1, k), yp = g.index(i, j + 1, k);
    const bool three_d = g.nz > 1;
    const std::size_t zm = three_d ? g.index(i, j, k - 1) : c;
    const std::size_t zp = three_d ? g.index(i, j, k + 1) : c;
    const double* v = f.values.data();
    const double n_axes = three_d ? 6.0 : 4.0;
    for (int m = 0; m < 5; ++m) {
        double s = v[5 * xm + m] + v[5 * xp + m] + v[5 * ym + m] + v[5 * yp + m];
        if (three_d) s += v[5 * zm + m] + v[5 * zp + m];
        out[m] = (s - n_axes * v[5 * c + m]) * inv_h2;
    }
}

// Flow gradient G = -lap_h Q + eps^-2 Df(Q) on interior nodes, zero on the
// boundary. Returned as a flat 5-per-node array in node order.
inline std::vector<double> flow_gradient(const FieldQ& f) {
    const GridSpec& g = f.grid;
    std::vector<double> grad(f.values.size(), 0.0);
    const double inv_e2 = 1.0 / (f.epsilon * f.epsilon);
    const int k0 = g.nz > 1 ? 1 : 0;
    const int kend = g.nz > 1 ? g.nz - 1 : 1;
    for (int k = k0; k < kend; ++k)
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) {
                const std::size_t n = g.index(i, j, k);
                double lap[5];
                laplacian_at(f, i, j, k, lap);
                const QTensor df = bulk_gradient(f.at(n), f.mp);
                for (int m = 0; m < 5; ++m)
                    grad[5 * n + m] = -lap[m] + inv_e2 * df.c[m];
            }
    return grad;
}

// Apply (I + tau * (-lap_h)) to v, treating boundary rows as identity.
// v is 5 doubles per node; boundary entries of CG vectors are kept at zero
// so the effective operator is the SPD interior submatrix.
inline void helmholtz_apply(const GridSpec& g, const std::vector<std::uint8_t>& bmask,
                            double tau, const std::vector<double>& v,
                            std::vector<double>& out) {
    const double inv_h2 = 1.0 / (g.h * g.h);
    const bool three_d = g.nz > 1;
    const double n_axes = three_d ? 6.0 : 4.0;
    const int k0 = three_d ? 1 : 0;
    const int kend = three_d ? g.nz - 1 : 1;
    std::fill(out.begin(), out.end(), 0.0);
    for (int k = k0; k < kend; ++k)
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) {
                const std::size_t c = g.index(i, j, k);
                if (bmask[c]) continue;
                const std::size_t xm = g.index(i - 1, j, k), xp = g.index(i + 1, j, k);
                const std::size_t ym = g.index(i, j - 1, k), yp = g.index(i, j + 1, k);
                const std::size_t zm = three_d ? g.index(i, j, k - 1) : c;
                const std::size_t zp = three_d ? g.index(i, j, k + 1) : c;
                for (int m = 0; m < 5; ++m) {
                    double s = v[5 * xm + m] + v[5 * xp + m] + v[5 * ym + m] +
                               v[5 * yp + m];
                    if (three_d) s += v[5 * zm + m] + v[5 * zp + m];
                    out[5 * c + m] =
                        v[5 * c + m] - tau * (s - n_axes * v[5 * c + m]) * inv_h2;
                }
            }
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace detail

// One explicit flow step: interior update Q <- Q - tau * G, boundary fixed.
inline FieldQ flow_step(const FieldQ& f, double tau) {
    if (tau < 0) throw std::invalid_argument("flow_step: tau must be >= 0");
    FieldQ out = f;
    if (tau == 0) return out;
    const std::vector<double> grad = detail::flow_gradient(f);
    for (std::size_t n = 0; n < f.grid.num_nodes(); ++n) {
        if (f.boundary[n]) continue;
        for (int m = 0; m < 5; ++m) out.values[5 * n + m] -= tau * grad[5 * n + m];
    }
    return out;
}

// One semi-implicit step: solve (I + tau*(-lap)) Q_next = Q - tau*eps^-2*Df(Q)
// by CG, with Dirichlet boundary values carried exactly.
inline FieldQ semi_implicit_step(const FieldQ& f, double tau, double cg_tol = 1e-11,
                                 int cg_max_iters = 800) {
    FieldQ out = f;  // initial guess: previous field (boundary entries correct)
    const std::size_t total = f.values.size();
    const double inv_e2 = 1.0 / (f.epsilon * f.epsilon);

    // rhs = Q - tau/eps^2 Df(Q) on interior; boundary handled via the guess.
    std::vector<double> rhs(total, 0.0);
    for (std::size_t n = 0; n < f.grid.num_nodes(); ++n) {
        if (f.boundary[n]) continue;
        const QTensor df = bulk_gradient(f.at(n), f.mp);
        for (int m = 0; m < 5; ++m)
            rhs[5 * n + m] = f.values[5 * n + m] - tau * inv_e2 * df.c[m];
    }

    // r = rhs - A x, with the boundary coupling of A folded in through x:
    // apply the operator to the full current iterate (boundary values live in
    // out.values), then zero the boundary rows of the residual.
    std::vector<double> r(total, 0.0), p(total, 0.0), ap(total, 0.0);
    {
        // full operator application including boundary neighbor values
        std::vector<double> ax(total, 0.0);
        const GridSpec& g = f.grid;
        const double inv_h2 = 1.0 / (g.h * g.h);
        const bool three_d = g.nz > 1;
        const double n_axes = three_d ? 6.0 : 4.0;
        const int k0 = three_d ? 1 : 0;
        const int kend = three_d ? g.nz - 1 : 1;
        const double* v = out.values.data();
        for (int k = k0; k < kend; ++k)
            for (int j = 1; j < g.ny - 1; ++j)
                for (int i = 1; i < g.nx - 1; ++i) {
                    const std::size_t c = g.index(i, j, k);
                    if (f.boundary[c]) continue;
                    const std::size_t xm = g.index(i - 1, j, k),
                                      xp = g.index(i + 1, j, k);
                    const std::size_t ym = g.index(i, j - 1, k),
                                      yp = g.index(i, j + 1, k);
                    const std::size_t zm = three_d ? g.index(i, j, k - 1) : c;
                    const std::size_t zp = three_d ? g.index(i, j, k + 1) : c;
                    for (int m = 0; m < 5; ++m) {
                        double s = v[5 * xm + m] + v[5 * xp + m] + v[5 * ym + m] +
                                   v[5 * yp + m];
                        if (three_d) s += v[5 * zm + m] + v[5 * zp + m];
                        ax[5 * c + m] =
                            v[5 * c + m] - tau * (s - n_axes * v[5 * c + m]) * inv_h2;
                    }
                }
        for (std::size_t n = 0; n < f.grid.num_nodes(); ++n) {
            if (f.boundary[n]) continue;
            for (int m = 0; m < 5; ++m) r[5 * n + m] = rhs[5 * n + m] - ax[5 * n + m];
        }
    }

    double rr = detail::dot(r, r);
    const double stop = cg_tol * cg_tol * std::max(detail::dot(rhs, rhs), 1e-300);
    p = r;
    for (int it = 0; it < cg_max_iters && rr > stop; ++it) {
        detail::helmholtz_apply(f.grid, f.boundary, tau, p, ap);
        const double alpha = rr / detail::dot(p, ap);
        for (std::size_t i = 0; i < total; ++i) out.values[i] += alpha * p[i];
        for (std::size_t i = 0; i < total; ++i) r[i] -= alpha * ap[i];
        const double rr_new = detail::dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < total; ++i) p[i] = r[i] + beta * p[i];
    }
    return out;
}

// Largest stable explicit step for this field.
inline double explicit_step_bound(const FieldQ& f, double step_safety) {
    const double M = flow_sup_bound(f.mp);
    const double lf = bulk_lipschitz(f.mp, M);
    const double n = f.grid.ndim();
    const double h2 = f.grid.h * f.grid.h;
    return step_safety * std::min(h2 / (2.0 * n), f.epsilon * f.epsilon / lf);
}

inline std::pair<FieldQ, ConvergenceReport> minimize(const FieldQ& init,
                                                     const SolveOptions& opts) {
    opts.validate();
    const auto t_start = std::chrono::steady_clock::now();
    const double M = flow_sup_bound(init.mp);
    const double lf = bulk_lipschitz(init.mp, M);

    FieldQ cur = init;
    ConvergenceReport rep;

    double energy_now = flow_energy(cur);
    if (!std::isfinite(energy_now))
        throw NonFiniteEnergy("minimize: initial energy is not finite");
    double res = el_residual(cur).sup;
    rep.trace.push_back({0, energy_now, res, 0.0});
    if (res <= opts.residual_tol) {
        rep.converged = true;
        rep.final_energy = energy_now;
        rep.final_residual = res;
        rep.seconds = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t_start)
                          .count();
        return {cur, rep};
    }

    const double tau_explicit = explicit_step_bound(cur, opts.step_safety);
    const double tau_semi =
        opts.step_safety * (cur.epsilon * cur.epsilon) / lf;
    const double tau_base =
        opts.scheme == Scheme::explicit_euler ? tau_explicit : tau_semi;
    const double tau_cap = opts.scheme == Scheme::explicit_euler
                               ? tau_explicit
                               : 64.0 * tau_semi;
    const double tau_floor = tau_base * 1e-6;
    double tau = tau_base;

    auto take_step = [&](const FieldQ& f, double t) {
        return opts.scheme == Scheme::explicit_euler ? flow_step(f, t)
                                                     : semi_implicit_step(f, t);
    };

    long iter = 0;
    for (iter = 1; iter <= opts.max_iters; ++iter) {
        FieldQ trial = take_step(cur, tau);
        double energy_trial = flow_energy(trial);
        // backtrack until the energy does not increase
        while (!(energy_trial <= energy_now) && tau > tau_floor) {
            tau *= 0.5;
            trial = take_step(cur, tau);
            energy_trial = flow_energy(trial);
        }
        if (!std::isfinite(energy_trial))
            throw NonFiniteEnergy("minimize: energy blow-up at iteration " +
                                  std::to_string(iter));
        if (!(energy_trial <= energy_now)) {
            // cannot decrease even at the floor: treat as stationary
            res = el_residual(cur).sup;
            rep.trace.push_back({iter, energy_now, res, tau});
            break;
        }
        cur = std::move(trial);
        energy_now = energy_trial;

        // sup bound maintained along the flow
        if (sup_norm(cur) > M * (1.0 + 1e-12))
            throw NonFiniteEnergy("minimize: flow escaped the sup-norm bound");

        const bool log_now = iter % opts.log_every == 0 || iter == opts.max_iters;
        if (log_now) {
            res = el_residual(cur).sup;
            rep.trace.push_back({iter, energy_now, res, tau});
            if (res <= opts.residual_tol) {
                rep.converged = true;
                break;
            }
        }
        tau = std::min(tau * 2.0, tau_cap);
    }

    res = el_residual(cur).sup;
    rep.converged = rep.converged || res <= opts.residual_tol;
    rep.iterations = std::min<long>(iter, opts.max_iters);
    rep.final_energy = energy_now;
    rep.final_residual = res;
    if (rep.trace.empty() || rep.trace.back().iter != rep.iterations)
        rep.trace.push_back({rep.iterations, energy_now, res, tau});
    rep.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - t_start)
                      .count();
    return {cur, rep};
}

// Warm-started sweep over strictly decreasing epsilons. The first entry is
// solved from `init`; each later epsilon reuses the previous solution.
inline std::vector<FieldQ> continuation_sweep(const FieldQ& init,
                                              const std::vector<double>& eps_list,
                                              const SolveOptions& opts,
                                              std::vector<ConvergenceReport>* reports =
                                                  nullptr) {
    if (eps_list.empty())
        throw std::invalid_argument("continuation_sweep: empty eps list");
    for (std::size_t i = 0; i + 1 < eps_list.size(); ++i)
        if (!(eps_list[i] > eps_list[i + 1]))
            throw std::invalid_argument(
                "continuation_sweep: eps list must be strictly decreasing");
    for (double e : eps_list)
        if (e < 2.0 * init.grid.h)
            throw std::invalid_argument("continuation_sweep: eps must be >= 2h");

    std::vector<FieldQ> out;
    out.reserve(eps_list.size());
    FieldQ warm = init;
    for (double e : eps_list) {
        warm.epsilon = e;
        auto [solved, rep] = minimize(warm, opts);
        if (reports) reports->push_back(rep);
        out.push_back(solved);
        warm = out.back();
    }
    return out;
}

}  // namespace ldg
