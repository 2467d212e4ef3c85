#pragma once

// Quantitative regularity machinery: regular scales, bad sets, greedy
// coverings, clearing-out and bulk-decay audits, good-radius selection,
// and directional flatness.
//
// All radius-indexed quantities live on the dyadic-in-h ladder
// r ∈ {h, 2h, ...} capped by the distance to the boundary; sup-defined
// scales are reported as the largest passing rung (bias at most one rung).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ldg/field_ops.hpp"
#include "ldg/grid.hpp"

namespace ldg {

struct IntervalTooNarrow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct HypothesisViolated : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct GoodRadiusViolation : std::logic_error {
    using std::logic_error::logic_error;
};

struct ScaleParams {
    double Lambda = 1.0;    // energy-density threshold for the type-II scale
    double eta_clear = 0.1; // clearing-out constant
    double sigma = 0.5;     // covering exponent parameter, in (0, 1/2]... see validate
    double theta = 0.5;     // radius-regime exponent, in (0,1)
    double beta = 0.5;      // directional-condition exponent, in (0, 1/2]

    void validate() const {
        if (!(Lambda > 0)) throw std::invalid_argument("ScaleParams: Lambda > 0");
        if (!(eta_clear > 0)) throw std::invalid_argument("ScaleParams: eta_clear > 0");
        if (!(sigma > 0) || !(sigma < 0.5 + 1e-15))
            throw std::invalid_argument("ScaleParams: sigma in (0, 1/2]");
        if (!(theta > 0) || !(theta < 1))
            throw std::invalid_argument("ScaleParams: theta in (0,1)");
        if (!(beta > 0) || beta > 0.5)
            throw std::invalid_argument("ScaleParams: beta in (0, 1/2]");
    }
};

enum class ScaleType { I, II };

namespace detail {

// Frobenius norm of the discrete Hessian of all five components at an
// interior node with margin >= h (central second differences, 4-point cross
// stencils).
inline double hessian_norm_at(const FieldQ& f, int i, int j, int k) {
    const GridSpec& g = f.grid;
    const double inv_h2 = 1.0 / (g.h * g.h);
    const bool three_d = g.nz > 1;
    const double* v = f.values.data();
    auto q = [&](int ii, int jj, int kk, int m) {
        return v[5 * g.index(ii, jj, kk) + m];
    };
    double s = 0;
    for (int m = 0; m < 5; ++m) {
        const double c = q(i, j, k, m);
        const double dxx = (q(i + 1, j, k, m) - 2 * c + q(i - 1, j, k, m)) * inv_h2;
        const double dyy = (q(i, j + 1, k, m) - 2 * c + q(i, j - 1, k, m)) * inv_h2;
        const double dxy = (q(i + 1, j + 1, k, m) - q(i + 1, j - 1, k, m) -
                            q(i - 1, j + 1, k, m) + q(i - 1, j - 1, k, m)) *
                           0.25 * inv_h2;
        s += dxx * dxx + dyy * dyy + 2 * dxy * dxy;
        if (three_d) {
            const double dzz =
                (q(i, j, k + 1, m) - 2 * c + q(i, j, k - 1, m)) * inv_h2;
            const double dxz = (q(i + 1, j, k + 1, m) - q(i + 1, j, k - 1, m) -
                                q(i - 1, j, k + 1, m) + q(i - 1, j, k - 1, m)) *
                               0.25 * inv_h2;
            const double dyz = (q(i, j + 1, k + 1, m) - q(i, j + 1, k - 1, m) -
                                q(i, j - 1, k + 1, m) + q(i, j - 1, k - 1, m)) *
                               0.25 * inv_h2;
            s += dzz * dzz + 2 * dxz * dxz + 2 * dyz * dyz;
        }
    }
    return std::sqrt(s);
}

struct BallSample {
    double dist = 0;
    double gnorm = 0;  // |grad Q|
    double hnorm = 0;  // |D^2 Q|
};

// Gather |grad Q| and |D^2 Q| at nodes within `cap` of x (only nodes where
// the central stencils exist), sorted by distance.
inline std::vector<BallSample> gather_derivative_samples(const FieldQ& f, const Vec3& x,
                                                         double cap) {
    const GridSpec& g = f.grid;
    Ball b{x, cap};
    NodeRange nr = clip_range(g, region_bbox(Region{b}));
    std::vector<BallSample> out;
    const bool three_d = g.nz > 1;
    for (int k = nr.k0; k <= nr.k1; ++k)
        for (int j = nr.j0; j <= nr.j1; ++j)
            for (int i = nr.i0; i <= nr.i1; ++i) {
                if (i < 1 || i >= g.nx - 1 || j < 1 || j >= g.ny - 1) continue;
                if (three_d && (k < 1 || k >= g.nz - 1)) continue;
                Vec3 p = g.coord(i, j, k);
                double d = (p - x).norm();
                if (d >= cap) continue;
                BallSample s;
                s.dist = d;
                s.gnorm = std::sqrt(gradient_at(f, i, j, k).norm2());
                s.hnorm = hessian_norm_at(f, i, j, k);
                out.push_back(s);
            }
    std::sort(out.begin(), out.end(),
              [](const BallSample& a, const BallSample& b) { return a.dist < b.dist; });
    return out;
}

// Type-I condition at rung r: r * sup_{B_r(x)} (|grad Q| + r |D^2 Q|) <= 1.
// Monotone in r (fails forever once it fails).
inline bool scale_I_passes(const std::vector<BallSample>& samples, double r) {
    double sup = 0;
    for (const BallSample& s : samples) {
        if (s.dist >= r) break;
        sup = std::max(sup, s.gnorm + r * s.hnorm);
    }
    return r * sup <= 1.0;
}

}  // namespace detail

// Largest ladder radius r with r * || |grad Q| + r |D^2 Q| ||_inf(B_r) <= 1;
// 0 if even r = h fails. Capped by the distance to the boundary.
inline double regular_scale_I(const FieldQ& f, const Vec3& x) {
    const double h = f.grid.h;
    const double cap = f.boundary_margin(x);
    if (cap < h) throw RegionOutOfDomain("regular_scale_I: x too close to the boundary");
    const int rungs = static_cast<int>(std::floor(cap / h + 1e-12));
    auto samples = detail::gather_derivative_samples(f, x, rungs * h);
    // the condition is monotone in r: binary search the largest passing rung
    if (!detail::scale_I_passes(samples, h)) return 0.0;
    int lo = 1, hi = rungs;  // lo passes
    while (lo < hi) {
        int mid = (lo + hi + 1) / 2;
        if (detail::scale_I_passes(samples, mid * h))
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo * h;
}

// Largest ladder radius r with E_eps(Q, B_r(x)) <= Lambda * r (not monotone:
// scanned from the top of the ladder).
inline double regular_scale_II(const FieldQ& f, const Vec3& x, double Lambda) {
    const double h = f.grid.h;
    const double cap = f.boundary_margin(x);
    if (cap < h)
        throw RegionOutOfDomain("regular_scale_II: x too close to the boundary");
    const int rungs = static_cast<int>(std::floor(cap / h + 1e-12));
    for (int m = rungs; m >= 1; --m) {
        const double r = m * h;
        if (energy(f, Region{Ball{x, r}}).total() <= Lambda * r) return r;
    }
    return 0.0;
}

// Node mask of the bad set at radius r, restricted to nodes whose ladder cap
// reaches r (others are left unmarked). Type I exploits monotonicity; type
// II scans rungs from r upward and marks bad when none passes.
inline std::vector<std::uint8_t> bad_set(const FieldQ& f, double r, double Lambda,
                                         ScaleType type) {
    const GridSpec& g = f.grid;
    const double h = g.h;
    if (r < h) throw std::invalid_argument("bad_set: r must be >= h");
    std::vector<std::uint8_t> mask(g.num_nodes(), 0);
    const bool three_d = g.nz > 1;

    // node-sampled energy density, reused across balls
    std::vector<double> density;
    if (type == ScaleType::II) {
        density.assign(g.num_nodes(), 0.0);
        for (int k = three_d ? 1 : 0; k < (three_d ? g.nz - 1 : 1); ++k)
            for (int j = 1; j < g.ny - 1; ++j)
                for (int i = 1; i < g.nx - 1; ++i)
                    density[g.index(i, j, k)] = energy_density_at(f, i, j, k);
    }
    const double w = g.cell_measure();

    auto ball_energy = [&](const Vec3& x, double rad) {
        Ball b{x, rad};
        NodeRange nr = clip_range(g, region_bbox(Region{b}));
        double acc = 0;
        for (int k = nr.k0; k <= nr.k1; ++k)
            for (int j = nr.j0; j <= nr.j1; ++j)
                for (int i = nr.i0; i <= nr.i1; ++i) {
                    Vec3 p = g.coord(i, j, k);
                    if ((p - x).dot(p - x) < rad * rad)
                        acc += density[g.index(i, j, k)];
                }
        return acc * w;
    };

    for (int k = three_d ? 1 : 0; k < (three_d ? g.nz - 1 : 1); ++k)
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) {
                const Vec3 x = g.coord(i, j, k);
                const double cap = f.boundary_margin(x);
                if (cap < r) continue;  // outside the audited subdomain
                const int rungs = static_cast<int>(std::floor(cap / h + 1e-12));
                const int first = static_cast<int>(std::ceil(r / h - 1e-12));
                bool bad = true;
                if (type == ScaleType::I) {
                    auto samples = detail::gather_derivative_samples(f, x, first * h);
                    bad = !detail::scale_I_passes(samples, first * h);
                } else {
                    for (int m = first; m <= rungs; ++m) {
                        if (ball_energy(x, m * h) <= Lambda * m * h) {
                            bad = false;
                            break;
                        }
                    }
                }
                mask[g.index(i, j, k)] = bad ? 1 : 0;
            }
    return mask;
}

struct CoverResult {
    long count = 0;
    std::vector<std::size_t> centers;  // node indices
};

// Greedy covering of the masked nodes by balls of radius r: repeatedly take
// the first (fixed index order) uncovered masked node as a center. The
// returned cover is verified: every masked node lies within r of a center.
inline CoverResult greedy_cover(const FieldQ& f, const std::vector<std::uint8_t>& mask,
                                double r) {
    const GridSpec& g = f.grid;
    if (mask.size() != g.num_nodes())
        throw std::invalid_argument("greedy_cover: mask size mismatch");
    if (r < g.h) throw std::invalid_argument("greedy_cover: r must be >= h");
    CoverResult res;
    std::vector<std::uint8_t> covered(g.num_nodes(), 0);
    const int reach = static_cast<int>(std::floor(r / g.h)) + 1;
    const bool three_d = g.nz > 1;
    for (std::size_t n = 0; n < g.num_nodes(); ++n) {
        if (!mask[n] || covered[n]) continue;
        const int ci = static_cast<int>(n % g.nx);
        const int cj = static_cast<int>((n / g.nx) % g.ny);
        const int ck = static_cast<int>(n / (std::size_t(g.nx) * g.ny));
        res.centers.push_back(n);
        const Vec3 x = g.coord(ci, cj, ck);
        const int k0 = three_d ? std::max(0, ck - reach) : 0;
        const int k1 = three_d ? std::min(g.nz - 1, ck + reach) : 0;
        for (int k = k0; k <= k1; ++k)
            for (int j = std::max(0, cj - reach); j <= std::min(g.ny - 1, cj + reach);
                 ++j)
                for (int i = std::max(0, ci - reach);
                     i <= std::min(g.nx - 1, ci + reach); ++i) {
                    Vec3 p = g.coord(i, j, k);
                    if ((p - x).dot(p - x) <= r * r) covered[g.index(i, j, k)] = 1;
                }
    }
    res.count = static_cast<long>(res.centers.size());
    for (std::size_t n = 0; n < g.num_nodes(); ++n)
        if (mask[n] && !covered[n])
            throw std::logic_error("greedy_cover: produced a non-cover");
    return res;
}

struct ClearingOutAudit {
    bool hypothesis = false;  // E(B_2r) <= eta_clear * r * log(r/eps)
    bool conclusion = false;  // E(B_r)  <= C * r
    double hypothesis_margin = 0;  // RHS - LHS (positive: satisfied)
    double conclusion_margin = 0;
    bool counterexample() const { return hypothesis && !conclusion; }
};

inline ClearingOutAudit clearing_out_audit(const FieldQ& f, const Vec3& x, double r,
                                           double eta_clear, double C) {
    if (!(r > f.epsilon / eta_clear))
        throw std::invalid_argument("clearing_out_audit: need r > eps/eta");
    if (f.boundary_margin(x) < 2.0 * r)
        throw RegionOutOfDomain("clearing_out_audit: B_2r not interior");
    ClearingOutAudit a;
    const double e2r = energy(f, Region{Ball{x, 2.0 * r}}).total();
    const double er = energy(f, Region{Ball{x, r}}).total();
    const double hyp_rhs = eta_clear * r * std::log(r / f.epsilon);
    const double con_rhs = C * r;
    a.hypothesis = e2r <= hyp_rhs;
    a.conclusion = er <= con_rhs;
    a.hypothesis_margin = hyp_rhs - e2r;
    a.conclusion_margin = con_rhs - er;
    return a;
}

struct GoodRadius {
    double r = 0;        // selected radius e^{s}
    double g_value = 0;  // (2/(eps^2 r)) * integral of f over B_r
    double f_value = 0;  // Theta at the selected radius
    double lambda = 0;   // (1/(s2-s1)) log(f(s2)/f(s1))
};

// Selects r_x in [eps^{1/4}, eps^{1/8}] minimizing g/f over a uniform sample
// of s in [log(eps)/4, log(eps)/8], and asserts the defining inequality
// g <= lambda * f at the selected sample.
inline GoodRadius good_radius(const FieldQ& f, const Vec3& x, const PhiCutoff& phi,
                              int num_samples = 33) {
    if (num_samples < 33)
        throw std::invalid_argument("good_radius: need >= 33 samples (32 intervals)");
    const double eps = f.epsilon;
    if (!(eps < 1.0))
        throw std::invalid_argument("good_radius: requires eps < 1");
    const double s1 = std::log(eps) / 4.0, s2 = std::log(eps) / 8.0;
    const double r_hi = std::exp(s2);  // eps^{1/8}
    if (r_hi < 4.0 * f.grid.h)
        throw IntervalTooNarrow("good_radius: eps^{1/8} < 4h");
    if (f.boundary_margin(x) < std::sqrt(10.0) * r_hi)
        throw RegionOutOfDomain("good_radius: support ball not interior");

    const double inv_e2 = 1.0 / (eps * eps);
    auto g_of = [&](double r) {
        Ball b{x, r};
        NodeRange nr = clip_range(f.grid, region_bbox(Region{b}));
        double acc = 0;
        const bool three_d = f.grid.nz > 1;
        for (int k = nr.k0; k <= nr.k1; ++k)
            for (int j = nr.j0; j <= nr.j1; ++j)
                for (int i = nr.i0; i <= nr.i1; ++i) {
                    (void)three_d;
                    Vec3 p = f.grid.coord(i, j, k);
                    if ((p - x).dot(p - x) < r * r)
                        acc += bulk_at(f, f.grid.index(i, j, k));
                }
        return 2.0 * inv_e2 / r * acc * f.grid.cell_measure();
    };

    std::vector<double> fs(num_samples), gs(num_samples), rs(num_samples);
    for (int q = 0; q < num_samples; ++q) {
        const double s = s1 + (s2 - s1) * q / (num_samples - 1);
        rs[q] = std::exp(s);
        fs[q] = theta(f, x, rs[q], phi);
        gs[q] = g_of(rs[q]);
    }

    int best = -1;
    double best_ratio = 0;
    for (int q = 0; q < num_samples; ++q) {
        if (fs[q] <= 0) {
            // vacuum-valued neighborhood: g must vanish too, any radius works
            if (gs[q] <= 0) return {rs[q], 0.0, fs[q], 0.0};
            continue;
        }
        const double ratio = gs[q] / fs[q];
        if (best < 0 || ratio < best_ratio) {
            best = q;
            best_ratio = ratio;
        }
    }
    if (best < 0) throw GoodRadiusViolation("good_radius: no admissible sample");

    GoodRadius out;
    out.r = rs[best];
    out.g_value = gs[best];
    out.f_value = fs[best];
    out.lambda = (fs.back() > 0 && fs.front() > 0)
                     ? std::log(fs.back() / fs.front()) / (s2 - s1)
                     : 0.0;
    if (!(out.g_value <= out.lambda * out.f_value))
        throw GoodRadiusViolation("good_radius: selected sample violates g <= lambda*f");
    return out;
}

// Ratio of the ball bulk integral to eps^3, guarded by the bounded-local-
// energy hypothesis E(B_4r)/r <= energy_bound.
inline double bulk_decay_audit(const FieldQ& f, const Vec3& x, double r,
                               double energy_bound) {
    if (f.boundary_margin(x) < 4.0 * r)
        throw RegionOutOfDomain("bulk_decay_audit: B_4r not interior");
    const double e4r = energy(f, Region{Ball{x, 4.0 * r}}).total();
    if (e4r > energy_bound * r)
        throw HypothesisViolated("bulk_decay_audit: local energy exceeds the bound: " +
                                 std::to_string(e4r / r));
    Ball b{x, r};
    NodeRange nr = clip_range(f.grid, region_bbox(Region{b}));
    double acc = 0;
    for (int k = nr.k0; k <= nr.k1; ++k)
        for (int j = nr.j0; j <= nr.j1; ++j)
            for (int i = nr.i0; i <= nr.i1; ++i) {
                Vec3 p = f.grid.coord(i, j, k);
                if ((p - x).dot(p - x) < r * r)
                    acc += bulk_at(f, f.grid.index(i, j, k));
            }
    const double eps3 = f.epsilon * f.epsilon * f.epsilon;
    return acc * f.grid.cell_measure() / eps3;
}

struct DirectionalFlatness {
    Vec3 best_v{};
    double value = 0;
};

// Minimizes directional_energy over unit directions: coarse spherical
// Fibonacci scan (>= 64 directions up to sign) followed by local refinement.
inline DirectionalFlatness directional_flatness(const FieldQ& f, const Vec3& x,
                                                double r, int coarse = 128) {
    if (coarse < 64) throw std::invalid_argument("directional_flatness: coarse >= 64");
    auto eval = [&](const Vec3& v) { return directional_energy(f, v, x, r); };

    Vec3 best{0, 0, 1};
    double best_val = eval(best);
    const double ga = M_PI * (3.0 - std::sqrt(5.0));
    for (int q = 0; q < coarse; ++q) {
        const double z = 1.0 - (q + 0.5) / coarse;  // upper hemisphere (v ~ -v)
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double ang = ga * q;
        Vec3 v{rho * std::cos(ang), rho * std::sin(ang), z};
        const double val = eval(v);
        if (val < best_val) {
            best_val = val;
            best = v;
        }
    }
    // local refinement: shrink an angular step around the best direction
    double step = 0.2;
    while (step > 1e-3) {
        bool improved = false;
        // perturb along two tangent directions
        Vec3 t1 = std::abs(best.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
        t1 = (t1 - best * t1.dot(best)).normalized();
        Vec3 t2 = best.cross(t1);
        for (const Vec3& t : {t1, t2, t1 * -1.0, t2 * -1.0}) {
            Vec3 v = (best + t * step).normalized();
            const double val = eval(v);
            if (val < best_val) {
                best_val = val;
                best = v;
                improved = true;
            }
        }
        if (!improved) step *= 0.5;
    }
    return {best, best_val};
}

struct ScaleReport {
    std::vector<std::size_t> nodes;
    std::vector<double> r_I;
    std::vector<double> r_II;
    std::map<double, std::vector<std::uint8_t>> bad_masks;  // radius -> mask
    std::map<double, CoverResult> covers;                   // radius -> cover
};

// Scales at explicit query nodes plus bad sets/coverings at the given radii.
inline ScaleReport build_scale_report(const FieldQ& f,
                                      const std::vector<std::size_t>& query_nodes,
                                      const std::vector<double>& radii,
                                      const ScaleParams& params) {
    params.validate();
    ScaleReport rep;
    const GridSpec& g = f.grid;
    for (std::size_t n : query_nodes) {
        const int i = static_cast<int>(n % g.nx);
        const int j = static_cast<int>((n / g.nx) % g.ny);
        const int k = static_cast<int>(n / (std::size_t(g.nx) * g.ny));
        const Vec3 x = g.coord(i, j, k);
        rep.nodes.push_back(n);
        rep.r_I.push_back(regular_scale_I(f, x));
        rep.r_II.push_back(regular_scale_II(f, x, params.Lambda));
    }
    for (double r : radii) {
        auto mask = bad_set(f, r, params.Lambda, ScaleType::II);
        rep.covers[r] = greedy_cover(f, mask, r);
        rep.bad_masks[r] = std::move(mask);
    }
    return rep;
}

inline void write_scale_csv(std::ostream& os, const FieldQ& f, const ScaleReport& rep,
                            double sigma) {
    const GridSpec& g = f.grid;
    os << "node,x,y,z,r_I,r_II\n";
    char buf[200];
    for (std::size_t q = 0; q < rep.nodes.size(); ++q) {
        const std::size_t n = rep.nodes[q];
        const int i = static_cast<int>(n % g.nx);
        const int j = static_cast<int>((n / g.nx) % g.ny);
        const int k = static_cast<int>(n / (std::size_t(g.nx) * g.ny));
        const Vec3 x = g.coord(i, j, k);
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n", n, x.x,
                      x.y, x.z, rep.r_I[q], rep.r_II[q]);
        os << buf;
    }
    os << "r,N,N_r_compensated\n";
    for (const auto& [r, cover] : rep.covers) {
        std::snprintf(buf, sizeof buf, "%.17g,%ld,%.17g\n", r, cover.count,
                      cover.count * std::pow(r, 1.0 + sigma));
        os << buf;
    }
}

}  // namespace ldg
