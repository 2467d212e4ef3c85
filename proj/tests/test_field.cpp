#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <ldg/boundary.hpp>
#include <ldg/field_ops.hpp>
#include <ldg/phi_cutoff.hpp>

#include <cmath>

using namespace ldg;

namespace {

const MaterialParams mp = MaterialParams::make(1.0, 1.0, 1.0);

FieldQ analytic_hedgehog(int n, double extent, double epsilon) {
    GridSpec g{n, n, n, extent / (n - 1), {0, 0, 0}};
    FieldQ f = FieldQ::make(g, mp, epsilon);
    Vec3 c{0.5 * extent, 0.5 * extent, 0.5 * extent};
    detail::fill_all(f, [&](const Vec3& p) { return hedgehog_value(c, mp, p); });
    return f;
}

FieldQ analytic_disclination_2d(int n, double extent, double winding, double epsilon) {
    GridSpec g{n, n, 1, extent / (n - 1), {0, 0, 0}};
    FieldQ f = FieldQ::make(g, mp, epsilon);
    auto ax = DisclinationAxis::make({0.5 * extent, 0.5 * extent, 0}, {0, 0, 1});
    detail::fill_all(f, [&](const Vec3& p) { return disclination_value(ax, winding, mp, p); });
    return f;
}

}  // namespace

TEST_CASE("cutoff function satisfies all defining constraints") {
    PhiCutoff phi = make_phi();

    CHECK(phi.eval(0.0) == 60.0);
    CHECK(phi.eval(4.0) == doctest::Approx(54.0).epsilon(1e-15));
    CHECK(phi.eval(10.0) == 0.0);
    CHECK(phi.eval(11.0) == 0.0);

    for (double t = 0.0; t <= 10.0001; t += 1e-4) {
        double v = phi.eval(t), d = phi.deriv(t);
        REQUIRE(v >= 0.0);
        REQUIRE(d <= 1e-15);
        REQUIRE(std::abs(d) <= 100.0);
        if (t <= 8.0) {
            REQUIRE(v >= 1.0);
            REQUIRE(d >= -2.0);
            REQUIRE(d <= -1.0);
        }
    }
    // C^1 across breakpoints
    for (double b : {8.0, 10.0}) {
        CHECK(std::abs(phi.eval(b - 1e-9) - phi.eval(b + 1e-9)) < 1e-7);
        CHECK(std::abs(phi.deriv(b - 1e-9) - phi.deriv(b + 1e-9)) < 1e-6);
    }
}

TEST_CASE("constant vacuum field has zero energy and zero residual") {
    GridSpec g{12, 12, 12, 0.1, {0, 0, 0}};
    FieldQ f = FieldQ::make(g, mp, 0.3);
    constant_init(f, {0, 0, 1});
    EnergyBreakdown e = energy_total(f);
    CHECK(e.dirichlet == 0.0);
    CHECK(std::abs(e.bulk) < 1e-12);
    CHECK(el_residual(f).sup < 1e-12);
    PhiCutoff phi = make_phi();
    CHECK(std::abs(theta(f, {0.55, 0.55, 0.55}, 0.05, phi)) < 1e-12);
}

TEST_CASE("hedgehog annulus Dirichlet energy matches the radial oracle") {
    FieldQ f = analytic_hedgehog(96, 1.0, 0.05);
    Vec3 c{0.5, 0.5, 0.5};
    double r = 0.2, R = 0.4;
    EnergyBreakdown inner = energy(f, Region{Ball{c, r}});
    EnergyBreakdown outer = energy(f, Region{Ball{c, R}});
    double dirichlet = outer.dirichlet - inner.dirichlet;
    double s = mp.s_star;
    double oracle = 8.0 * M_PI * s * s * (R - r);
    CHECK(std::abs(dirichlet - oracle) / oracle < 0.02);
    // pointwise vacuum: bulk contribution vanishes
    CHECK(std::abs(outer.bulk - inner.bulk) < 1e-10);
}

TEST_CASE("half-winding disclination annulus energy per unit length matches log oracle") {
    FieldQ f = analytic_disclination_2d(512, 1.0, 0.5, 0.05);
    Vec3 c{0.5, 0.5, 0};
    double r = 0.1, R = 0.4;
    double dirichlet = energy(f, Region{Ball{c, R}}).dirichlet -
                       energy(f, Region{Ball{c, r}}).dirichlet;
    double s = mp.s_star;
    double oracle = 0.5 * M_PI * s * s * std::log(R / r);
    CHECK(std::abs(dirichlet - oracle) / oracle < 0.02);
}

TEST_CASE("discrete energy converges at second order on the hedgehog annulus") {
    Vec3 c{0.5, 0.5, 0.5};
    double r = 0.2, R = 0.4;
    double s = mp.s_star;
    double oracle = 8.0 * M_PI * s * s * (R - r);
    auto err = [&](int n) {
        FieldQ f = analytic_hedgehog(n, 1.0, 0.05);
        double d = energy(f, Region{Ball{c, R}}).dirichlet -
                   energy(f, Region{Ball{c, r}}).dirichlet;
        return std::abs(d - oracle);
    };
    // even node counts keep the singular center strictly between nodes
    double e1 = err(48), e2 = err(96);
    CHECK(e1 / e2 > 2.5);  // ~4 for clean h^2
}

TEST_CASE("energy additivity over disjoint boxes is exact") {
    FieldQ f = analytic_hedgehog(32, 1.0, 0.1);
    // split precisely between node planes so every node lands in exactly one half
    double mid = 0.45 + 0.5 * f.grid.h;
    Box left{{0.2, 0.2, 0.2}, {mid, 0.7, 0.7}};
    Box right{{mid, 0.2, 0.2}, {0.7, 0.7, 0.7}};
    Box whole{{0.2, 0.2, 0.2}, {0.7, 0.7, 0.7}};
    EnergyBreakdown el = energy(f, Region{left});
    EnergyBreakdown er = energy(f, Region{right});
    EnergyBreakdown ew = energy(f, Region{whole});
    // every node is counted exactly once; equality holds up to summation-order roundoff
    CHECK(el.dirichlet + er.dirichlet ==
          doctest::Approx(ew.dirichlet).epsilon(1e-12));
    CHECK(std::abs(el.bulk + er.bulk - ew.bulk) <
          1e-14 * (1.0 + std::abs(ew.total())));

    CHECK_THROWS_AS(energy(f, Region{Ball{{0.5, 0.5, 0.5}, 0.8}}), RegionOutOfDomain);
}

TEST_CASE("theta is scale invariant on the analytic hedgehog") {
    FieldQ f = analytic_hedgehog(104, 1.0, 0.05);
    PhiCutoff phi = make_phi();
    Vec3 c{0.5, 0.5, 0.5};
    double h = f.grid.h;
    double lo = 1e300, hi = -1e300;
    std::vector<double> rs, ths;
    for (double r = 8 * h; r <= 16 * h; r += 2 * h) {
        double th = theta(f, c, r, phi);
        lo = std::min(lo, th);
        hi = std::max(hi, th);
        rs.push_back(r);
        ths.push_back(th);
    }
    // The continuum value is the r-independent constant
    //   8 pi s^2 * int_0^sqrt(10) phi(u^2) du.
    // The discrete gradient under-resolves the singular core, which subtracts
    // a fixed amount of weighted energy: theta(r) = A - B/r with A the
    // continuum constant. Drift within [8h, 16h] stays below 5%, and the
    // core-corrected intercept A recovers the constant to better than 2%.
    CHECK((hi - lo) / hi < 0.05);

    double s = mp.s_star;
    double integral = 0.0;
    const int nq = 200000;
    const double umax = std::sqrt(10.0);
    for (int i = 0; i < nq; ++i) {
        double u = (i + 0.5) * umax / nq;
        integral += phi.eval(u * u);
    }
    integral *= umax / nq;
    double constant = 8.0 * M_PI * s * s * integral;

    // least-squares fit theta(r) = A - B/r over the sampled radii
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = static_cast<int>(rs.size());
    for (int i = 0; i < m; ++i) {
        double x = 1.0 / rs[i];
        sx += x;
        sy += ths[i];
        sxx += x * x;
        sxy += x * ths[i];
    }
    double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    double A = (sy - slope * sx) / m;
    CHECK(std::abs(A - constant) / constant < 0.02);

    CHECK_THROWS_AS(theta(f, c, 0.2, phi), SupportExceedsDomain);
}

TEST_CASE("directional energy: invariance along the axis and Pythagoras identity") {
    GridSpec g{40, 40, 40, 1.0 / 39, {0, 0, 0}};
    FieldQ f = FieldQ::make(g, mp, 0.1);
    auto ax = DisclinationAxis::make({0.5, 0.5, 0}, {0, 0, 1});
    detail::fill_all(f, [&](const Vec3& p) { return disclination_value(ax, 0.5, mp, p); });

    Vec3 x{0.5, 0.5, 0.5};
    double r = 0.3;
    double along = directional_energy(f, {0, 0, 1}, x, r);
    double e1 = directional_energy(f, {1, 0, 0}, x, r);
    double e2 = directional_energy(f, {0, 1, 0}, x, r);
    CHECK(along < 1e-3 * (e1 + e2));

    // sum over an orthonormal triple equals (1/r) * int |grad Q|^2
    double total = 2.0 * energy(f, Region{Ball{x, r}}).dirichlet / r;
    CHECK(along + e1 + e2 == doctest::Approx(total).epsilon(1e-12));
}

TEST_CASE("lp gradient norms: p=2 identity and p=1.5 radial oracle") {
    FieldQ f = analytic_hedgehog(96, 1.0, 0.05);
    Vec3 c{0.5, 0.5, 0.5};
    Region K{Box{{0.15, 0.15, 0.15}, {0.85, 0.85, 0.85}}};
    double l2 = lp_gradient_norm(f, 2.0, K);
    double dir = energy(f, K).dirichlet;
    CHECK(l2 * l2 == doctest::Approx(2.0 * dir).epsilon(1e-12));

    // annulus, p = 1.5: |grad Q| = 2 s / rho
    double r = 0.2, R = 0.4;
    double p = 1.5, s = mp.s_star;
    double ann = std::pow(lp_gradient_norm(f, p, Region{Ball{c, R}}), p) -
                 std::pow(lp_gradient_norm(f, p, Region{Ball{c, r}}), p);
    double oracle = 4.0 * M_PI * std::pow(2.0 * s, p) * (2.0 / 3.0) *
                    (std::pow(R, 1.5) - std::pow(r, 1.5));
    CHECK(std::abs(ann - oracle) / oracle < 0.03);

    CHECK(lp_gradient_norm(FieldQ::make(GridSpec{8, 8, 8, 0.1, {}}, mp, 0.1), 1.2,
                           Region{Ball{{0.35, 0.35, 0.35}, 0.2}}) == 0.0);
}

TEST_CASE("el_residual locality: single-node perturbation touches only its stencil") {
    GridSpec g{16, 16, 16, 0.08, {0, 0, 0}};
    FieldQ f = FieldQ::make(g, mp, 0.2);
    constant_init(f, {1, 0, 0});
    std::size_t center = g.index(8, 8, 8);
    QTensor q = f.at(center);
    q.c[0] += 1e-3;
    f.set(center, q);
    ElResidual res = el_residual(f);
    CHECK(res.sup > 0.0);
    for (int k = 1; k < g.nz - 1; ++k)
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) {
                int man = std::abs(i - 8) + std::abs(j - 8) + std::abs(k - 8);
                if (man > 1) REQUIRE(res.node_norm[g.index(i, j, k)] < 1e-12);
            }
}

TEST_CASE("boundary generators produce vacuum data and reject degenerate geometry") {
    GridSpec g{20, 20, 20, 1.0 / 19, {0, 0, 0}};
    FieldQ f = FieldQ::make(g, mp, 0.1);
    hedgehog_bc(f, {0.5 + 0.5 * g.h, 0.5 + 0.5 * g.h, 0.5 + 0.5 * g.h});
    for (std::size_t n = 0; n < g.num_nodes(); ++n)
        if (f.boundary[n]) REQUIRE(std::abs(bulk_potential(f.at(n), mp)) < 1e-12);

    // center exactly on a boundary node
    FieldQ f2 = FieldQ::make(g, mp, 0.1);
    CHECK_THROWS_AS(hedgehog_bc(f2, {0, 0, 0}), DegenerateGeometry);

    // axis through a boundary node
    FieldQ f3 = FieldQ::make(g, mp, 0.1);
    auto ax = DisclinationAxis::make({0, 0, 0}, {0, 0, 1});
    CHECK_THROWS_AS(disclination_bc(f3, ax, 0.5), DegenerateGeometry);

    CHECK_THROWS_AS(disclination_bc(f3, DisclinationAxis::make({0.53, 0.48, 0}, {0, 0, 1}), 0.3),
                    std::invalid_argument);
}
